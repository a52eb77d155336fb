"""Exact scalars, extended intervals and the validated domain records.

Every parameter value in the package is a :class:`fractions.Fraction`.
Unbounded interval endpoints are ``None``; they are always open.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import CurveError, DegreeError, RankError

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``int``, ``Fraction`` or an ``"n/d"`` / ``"n"`` literal.

    Floats are rejected: a float has already lost exactness.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ExtendedInterval:
    """An interval of the extended rational line.

    ``lower``/``upper`` of ``None`` mean -inf/+inf. A finite interval with
    ``lower > upper`` is allowed: it is empty, but keeps the endpoints that
    produced it (theorem windows such as ``[0, -1)`` are reported verbatim).
    """

    lower: Optional[Fraction]
    upper: Optional[Fraction]
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self) -> None:
        if self.lower is not None:
            object.__setattr__(self, "lower", as_rational(self.lower))
        elif self.lower_closed:
            object.__setattr__(self, "lower_closed", False)
        if self.upper is not None:
            object.__setattr__(self, "upper", as_rational(self.upper))
        elif self.upper_closed:
            object.__setattr__(self, "upper_closed", False)

    @classmethod
    def closed(cls, lo: RationalLike, hi: RationalLike) -> "ExtendedInterval":
        return cls(as_rational(lo), as_rational(hi), True, True)

    @classmethod
    def open(cls, lo: Optional[RationalLike], hi: Optional[RationalLike]) -> "ExtendedInterval":
        return cls(
            None if lo is None else as_rational(lo),
            None if hi is None else as_rational(hi),
            False,
            False,
        )

    @classmethod
    def closed_open(cls, lo: RationalLike, hi: Optional[RationalLike]) -> "ExtendedInterval":
        return cls(as_rational(lo), None if hi is None else as_rational(hi), True, False)

    @classmethod
    def open_closed(cls, lo: Optional[RationalLike], hi: RationalLike) -> "ExtendedInterval":
        return cls(None if lo is None else as_rational(lo), as_rational(hi), False, True)

    @classmethod
    def real_line(cls) -> "ExtendedInterval":
        return cls(None, None, False, False)

    @classmethod
    def empty(cls) -> "ExtendedInterval":
        return cls(Fraction(0), Fraction(0), False, False)

    @property
    def bounded(self) -> bool:
        return self.lower is not None and self.upper is not None

    def is_empty(self) -> bool:
        if self.lower is None or self.upper is None:
            return False
        if self.lower < self.upper:
            return False
        if self.lower > self.upper:
            return True
        return not (self.lower_closed and self.upper_closed)

    def contains(self, x: RationalLike) -> bool:
        x = as_rational(x)
        if self.lower is not None:
            if x < self.lower or (x == self.lower and not self.lower_closed):
                return False
        if self.upper is not None:
            if x > self.upper or (x == self.upper and not self.upper_closed):
                return False
        return True

    def contains_right_of(self, x: RationalLike) -> bool:
        """True iff ``x + eps`` lies in the interval for all small ``eps > 0``."""
        x = as_rational(x)
        if self.is_empty():
            return False
        lower_ok = self.lower is None or self.lower <= x
        upper_ok = self.upper is None or x < self.upper
        return lower_ok and upper_ok

    def contains_left_of(self, x: RationalLike) -> bool:
        """True iff ``x - eps`` lies in the interval for all small ``eps > 0``."""
        x = as_rational(x)
        if self.is_empty():
            return False
        lower_ok = self.lower is None or self.lower < x
        upper_ok = self.upper is None or x <= self.upper
        return lower_ok and upper_ok

    def intersect(self, other: "ExtendedInterval") -> "ExtendedInterval":
        if self.is_empty() or other.is_empty():
            return ExtendedInterval.empty()
        lo, lo_closed = _max_lower(
            (self.lower, self.lower_closed), (other.lower, other.lower_closed)
        )
        hi, hi_closed = _min_upper(
            (self.upper, self.upper_closed), (other.upper, other.upper_closed)
        )
        result = ExtendedInterval(lo, hi, lo_closed, hi_closed)
        return ExtendedInterval.empty() if result.is_empty() else result

    def normalized(self) -> "ExtendedInterval":
        """Canonical form: every empty interval maps to the same value."""
        return ExtendedInterval.empty() if self.is_empty() else self

    def negated(self) -> "ExtendedInterval":
        """The reflection ``{-x : x in self}``."""
        return ExtendedInterval(
            None if self.upper is None else -self.upper,
            None if self.lower is None else -self.lower,
            self.upper_closed,
            self.lower_closed,
        )

    def midpoint(self) -> Fraction:
        if not self.bounded:
            raise ValueError("midpoint of an unbounded interval")
        return (self.lower + self.upper) / 2

    def __str__(self) -> str:
        lo = "-inf" if self.lower is None else format_rational(self.lower)
        hi = "+inf" if self.upper is None else format_rational(self.upper)
        return f"{'[' if self.lower_closed else '('}{lo}, {hi}{']' if self.upper_closed else ')'}"


def _max_lower(x, y):
    (a, ac), (b, bc) = x, y
    if a is None:
        return b, bc
    if b is None:
        return a, ac
    if a > b:
        return a, ac
    if b > a:
        return b, bc
    return a, ac and bc


def _min_upper(x, y):
    (a, ac), (b, bc) = x, y
    if a is None:
        return b, bc
    if b is None:
        return a, ac
    if a < b:
        return a, ac
    if b < a:
        return b, bc
    return a, ac and bc


def interval_contains(i: ExtendedInterval, x: RationalLike) -> bool:
    return i.contains(x)


@dataclass(frozen=True, order=True)
class HiggsType:
    """Type ``(p, q, a, b)``: ranks and degrees of ``V`` and ``W``.

    Construction enforces the basic invariants; zero-rank summands must
    have zero degree. Main types (both ranks positive) are checked by
    :func:`validate_type`.
    """

    p: int
    q: int
    a: int
    b: int

    def __post_init__(self) -> None:
        for name in ("p", "q", "a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if self.p < 0 or self.q < 0:
            raise RankError(f"negative rank in ({self.p}, {self.q})")
        if self.p == 0 and self.q == 0:
            raise RankError("both ranks are zero")
        if self.p == 0 and self.a != 0:
            raise DegreeError(f"p = 0 forces a = 0, got a = {self.a}")
        if self.q == 0 and self.b != 0:
            raise DegreeError(f"q = 0 forces b = 0, got b = {self.b}")

    @property
    def rank(self) -> int:
        return self.p + self.q

    @property
    def degree(self) -> int:
        return self.a + self.b

    @property
    def is_main(self) -> bool:
        return self.p >= 1 and self.q >= 1

    def __add__(self, other: "HiggsType") -> "HiggsType":
        return HiggsType(self.p + other.p, self.q + other.q, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "HiggsType") -> "HiggsType":
        return HiggsType(self.p - other.p, self.q - other.q, self.a - other.a, self.b - other.b)

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.a, self.b)

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.a},{self.b})"


def validate_type(p: int, q: int, a: int, b: int, require_main: bool = False) -> HiggsType:
    t = HiggsType(p, q, a, b)
    if require_main and not t.is_main:
        raise RankError(f"main type needs p >= 1 and q >= 1, got ({p}, {q})")
    return t


@dataclass(frozen=True)
class CurveData:
    """Genus of the curve and degree of the twisting line bundle."""

    genus: int
    deg_l: int
    canonical: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise CurveError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if isinstance(self.deg_l, bool) or not isinstance(self.deg_l, int):
            raise CurveError(f"deg_l must be an integer, got {self.deg_l!r}")
        if self.canonical and self.deg_l != 2 * self.genus - 2:
            raise CurveError(
                f"canonical twist needs deg_l = 2g-2 = {2 * self.genus - 2}, got {self.deg_l}"
            )

    @classmethod
    def with_canonical_twist(cls, genus: int) -> "CurveData":
        return cls(genus, 2 * genus - 2, True)

    @property
    def canonical_degree(self) -> int:
        return 2 * self.genus - 2


def merge_intervals(intervals) -> list:
    """Sorted union of intervals; overlapping or touching pieces are joined."""
    pieces = [i for i in intervals if not i.is_empty()]

    def lower_key(i):
        if i.lower is None:
            return (0, Fraction(0), 0)
        return (1, i.lower, 0 if i.lower_closed else 1)

    pieces.sort(key=lower_key)
    merged: list = []
    for cur in pieces:
        if merged:
            last = merged[-1]
            joins = (
                last.upper is None
                or cur.lower is None
                or cur.lower < last.upper
                or (cur.lower == last.upper and (cur.lower_closed or last.upper_closed))
            )
            if joins:
                hi, hi_closed = _max_upper((last.upper, last.upper_closed), (cur.upper, cur.upper_closed))
                merged[-1] = ExtendedInterval(last.lower, hi, last.lower_closed, hi_closed)
                continue
        merged.append(cur)
    return merged


def _max_upper(x, y):
    (a, ac), (b, bc) = x, y
    if a is None or b is None:
        return None, False
    if a > b:
        return a, ac
    if b > a:
        return b, bc
    return a, ac or bc
