"""Theorem hypotheses as exact predicates over a type, a curve and alpha.

Every verdict is conditional: it states which sufficient conditions hold,
never that a moduli space is nonempty.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .core_types import (
    CurveData,
    ExtendedInterval,
    HiggsType,
    RationalLike,
    as_rational,
    format_rational,
    merge_intervals,
)
from .errors import DegLNonpositive, HypothesisError
from .invariants import (
    chi,
    expected_dimension,
    genericity,
    slope_difference,
    toledo,
)
from .parameter_space import _numerical_walls


def _require_positive_deg_l(c: CurveData) -> None:
    if c.deg_l < 1:
        raise DegLNonpositive(f"deg(L) = {c.deg_l}; these results need deg(L) >= 1")


class WindowSource(str, enum.Enum):
    Q1_SPECIAL = "Q1Special"
    REGIME_POSITIVE_ALPHA = "RegimePositiveAlpha"
    REGIME_NEGATIVE_ALPHA = "RegimeNegativeAlpha"
    Q1_RANGE_ALL_NONNEGATIVE = "Q1RangeAllNonnegative"
    Q1_RANGE_ALL_NONPOSITIVE = "Q1RangeAllNonpositive"


@dataclass(frozen=True)
class VanishingWindow:
    """Union of the alpha-intervals on which H^2 of the deformation complex
    vanishes. ``pieces`` keeps each clause's interval before merging."""

    intervals: Tuple[ExtendedInterval, ...]
    stable_only: bool
    sources: Tuple[WindowSource, ...]
    pieces: Tuple[Tuple[WindowSource, ExtendedInterval], ...] = ()
    notes: Tuple[str, ...] = ()

    def contains(self, alpha: RationalLike) -> bool:
        return any(i.contains(alpha) for i in self.intervals)


def _regime_bounds(t: HiggsType, dl: int) -> Tuple[Fraction, Fraction]:
    """``(U2, L3)``: the finite ends of the alpha >= 0 and alpha <= 0 windows."""
    p, q = t.p, t.q
    e = -slope_difference(t)
    coef = Fraction(2 * p * q, min(p, q) * abs(p - q) + p + q)
    return coef * (e - dl) + dl, coef * (e + dl) - dl


def h2_vanishing_window(t: HiggsType, c: CurveData) -> VanishingWindow:
    g, dl = c.genus, c.deg_l
    if dl < 2 * g - 2:
        raise HypothesisError(f"deg(L) = {dl} < 2g-2 = {2 * g - 2}")
    _require_positive_deg_l(c)
    p, q = t.p, t.q
    d = slope_difference(t)
    pieces: List[Tuple[WindowSource, ExtendedInterval]] = []
    notes: List[str] = []

    u2, l3 = _regime_bounds(t, dl)
    if d > -dl and u2 > 0:
        pieces.append((WindowSource.REGIME_POSITIVE_ALPHA, ExtendedInterval.closed_open(0, u2)))
    if d < dl and l3 < 0:
        pieces.append((WindowSource.REGIME_NEGATIVE_ALPHA, ExtendedInterval.open_closed(l3, 0)))

    if q == 1 and p >= 2 and dl > 2 * g - 2:
        excess = dl - (2 * g - 2)
        centre = p * d
        half = (p + 1) * excess
        pieces.append((WindowSource.Q1_SPECIAL, ExtendedInterval.open(centre - half, centre + half)))
        notes.append(
            "q = 1 clause uses half-width (p+1)(deg(L)-2g+2) = "
            f"{format_rational(half)}; the variant with half-width (p+1)deg(L) = "
            f"{(p + 1) * dl} is not used"
        )
        if centre > 2 * g - 2 - (p - 2) * excess:
            pieces.append((WindowSource.Q1_RANGE_ALL_NONNEGATIVE, ExtendedInterval.closed_open(0, None)))
        if centre < -(2 * g - 2) + (p - 2) * excess:
            pieces.append((WindowSource.Q1_RANGE_ALL_NONPOSITIVE, ExtendedInterval.open_closed(None, 0)))

    stable_only = dl == 2 * g - 2
    if stable_only:
        notes.append("deg(L) = 2g-2: vanishing holds for alpha-stable objects only")
    return VanishingWindow(
        intervals=tuple(merge_intervals([iv for _, iv in pieces])),
        stable_only=stable_only,
        sources=tuple(src for src, _ in pieces),
        pieces=tuple(pieces),
        notes=tuple(notes),
    )


class Conclusion(str, enum.Enum):
    NOT_APPLICABLE = "NotApplicable"
    SMOOTH = "Smooth"
    STABLE_LOCI_BIRATIONAL = "StableLociBirational"
    FULL_MODULI_BIRATIONAL = "FullModuliBirational"
    IRREDUCIBLE = "Irreducible"
    GL_SEMISTABLE = "GlSemistable"


DetailValue = Union[str, int, bool]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one theorem check. ``applicable`` is the conjunction of the
    condition flags; ``details`` carries extra scalar facts (e.g. the
    dimension for smoothness)."""

    applicable: bool
    conclusion: Conclusion
    window_used: ExtendedInterval
    conditions: Tuple[Tuple[str, bool], ...]
    notes: Tuple[str, ...] = ()
    details: Dict[str, DetailValue] = field(default_factory=dict)

    @classmethod
    def build(cls, conditions, success, window, notes=(), details=None) -> "Verdict":
        conditions = tuple((name, bool(ok)) for name, ok in conditions)
        ok = all(flag for _, flag in conditions)
        return cls(
            ok,
            success if ok else Conclusion.NOT_APPLICABLE,
            window,
            conditions,
            tuple(notes),
            dict(details or {}),
        )


def smoothness_verdict(t: HiggsType, c: CurveData, alpha: RationalLike) -> Verdict:
    alpha = as_rational(alpha)
    win = h2_vanishing_window(t, c)
    inside = [i for i in win.intervals if i.contains(alpha)]
    if inside:
        used = inside[0]
    elif win.intervals:
        used = win.intervals[0]
    else:
        used = ExtendedInterval.empty()
    return Verdict.build(
        [("alpha_in_vanishing_window", bool(inside))],
        Conclusion.SMOOTH,
        used,
        notes=win.notes,
        details={"dimension": expected_dimension(t, c), "stable_only": win.stable_only},
    )


@dataclass(frozen=True)
class Decomposition:
    """An equal-slope split ``t = t1 + t2``; ``t1`` is the part with the
    smaller proportion ``p1/(p1+q1)``. ``chi_21 = chi(t1, t2)`` and
    ``chi_12 = chi(t2, t1)``."""

    t1: HiggsType
    t2: HiggsType
    chi_12: int
    chi_21: int
    same_sign_ranks: bool

    def pair(self) -> Tuple[HiggsType, HiggsType]:
        return (self.t1, self.t2)


def _mw_ok(pp: int, qq: int, tt: int, num: int, den: int, dl: int) -> bool:
    """Milnor-Wood bounds at ``alpha = num/den`` (``den > 0``) for a part of
    ranks ``(pp, qq)`` and ``tt = 2(qq*a - pp*b)``, cleared of denominators.
    Same case split as :func:`mw_interval`."""
    nn = pp + qq
    m = min(pp, qq)
    k = abs(pp - qq)
    lhs = tt * den
    if num > -dl * den:
        upper_ok = lhs <= m * (dl * nn * den - num * k)
    else:
        upper_ok = lhs <= -2 * pp * qq * num
    if not upper_ok:
        return False
    if num < dl * den:
        return lhs >= m * (-num * k - dl * nn * den)
    return lhs >= -2 * pp * qq * num


def _range_ok(pp: int, qq: int, aa: int, bb: int, num: int, den: int, dl: int) -> bool:
    """``num/den`` in ``[alpha_m, alpha_M]`` of the type, for ``pp != qq``,
    with ``a/p - b/q = dd/(pp*qq)``; same case split as :func:`alpha_range`."""
    nn = pp + qq
    k = abs(pp - qq)
    big = max(pp, qq)
    pq = pp * qq
    dd = aa * qq - bb * pp
    if dd < dl * pq:
        hi_ok = num * k * pq <= den * (-2 * big * dd + nn * dl * pq)
    else:
        hi_ok = num * pq <= -den * dd
    if not hi_ok:
        return False
    if dd > -dl * pq:
        return num * k * pq >= den * (-2 * big * dd - nn * dl * pq)
    return num * pq >= -den * dd


def _part_admissible(part: HiggsType, num: int, den: int, dl: int) -> bool:
    if not part.is_main:
        return True
    if not _mw_ok(part.p, part.q, 2 * (part.q * part.a - part.p * part.b), num, den, dl):
        return False
    if part.p != part.q and not _range_ok(part.p, part.q, part.a, part.b, num, den, dl):
        return False
    return True


def _mw_a_bounds(pp: int, qq: int, ss: int, num: int, den: int, dl: int) -> Tuple[int, int]:
    """Integer range of ``a`` for a main part with ``a + b = ss`` whose
    Toledo invariant ``2(n*a - pp*ss)/n`` meets the Milnor-Wood bounds."""
    nn = pp + qq
    m = min(pp, qq)
    k = abs(pp - qq)
    if num > -dl * den:
        upper = m * (dl * nn * den - num * k)
    else:
        upper = -2 * pp * qq * num
    if num < dl * den:
        lower = m * (-num * k - dl * nn * den)
    else:
        lower = -2 * pp * qq * num
    # tt*den = 2*den*(nn*a - pp*ss) must lie in [lower, upper]
    scale = 2 * den * nn
    shift = 2 * den * pp * ss
    return -((-(lower + shift)) // scale), (upper + shift) // scale


def _canonical_pairs(t: HiggsType, pairs: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    n = t.p + t.q
    out = set()
    for p1, q1 in pairs:
        n1 = p1 + q1
        if n1 == 0 or n1 == n or p1 * n == t.p * n1:
            continue
        if p1 * n > t.p * n1:
            p1, q1 = t.p - p1, t.q - q1
        out.add((p1, q1))
    return sorted(out)


def _a1_candidates(t, p1, q1, s1, num, den, dl) -> Iterable[int]:
    p2, q2 = t.p - p1, t.q - q1
    s2 = t.a + t.b - s1
    forced = set()
    if p1 == 0:
        forced.add(0)
    if q1 == 0:
        forced.add(s1)
    if p2 == 0:
        forced.add(t.a)
    if q2 == 0:
        forced.add(s1 - t.b)
    if forced:
        return list(forced) if len(forced) == 1 else []
    # both parts main: each Toledo invariant is affine in a1
    lo1, hi1 = _mw_a_bounds(p1, q1, s1, num, den, dl)
    lo2, hi2 = _mw_a_bounds(p2, q2, s2, num, den, dl)
    return range(max(lo1, t.a - hi2), min(hi1, t.a - lo2) + 1)


def enumerate_decompositions(
    t: HiggsType,
    c: CurveData,
    alpha_c: RationalLike,
    _rank_pairs: Optional[Iterable[Tuple[int, int]]] = None,
) -> List[Decomposition]:
    """All unordered splits ``t = t1 + t2`` into valid types of equal
    alpha_c-slope whose main parts pass the Milnor-Wood and alpha-range
    filters at alpha_c. Splits with ``p1/n1 = p/n`` (slope equality for every
    alpha) are not wall phenomena and are left out."""
    _require_positive_deg_l(c)
    alpha = as_rational(alpha_c)
    p, q = t.p, t.q
    n = p + q
    total = t.a + t.b
    if _rank_pairs is None:
        _rank_pairs = ((p1, q1) for p1 in range(p + 1) for q1 in range(q + 1))
    num, den = alpha.numerator, alpha.denominator
    found = []
    for p1, q1 in _canonical_pairs(t, _rank_pairs):
        n1 = p1 + q1
        # s1 = n1*mu_alpha(t) - alpha*p1 must be an integer
        s_num = n1 * total * den + num * (n1 * p - n * p1)
        if s_num % (n * den):
            continue
        s1 = s_num // (n * den)
        for a1 in _a1_candidates(t, p1, q1, s1, num, den, c.deg_l):
            b1 = s1 - a1
            a2, b2 = t.a - a1, t.b - b1
            if (p1 == 0 and a1) or (q1 == 0 and b1) or (p - p1 == 0 and a2) or (q - q1 == 0 and b2):
                continue
            t1 = HiggsType(p1, q1, a1, b1)
            t2 = HiggsType(p - p1, q - q1, a2, b2)
            if not (_part_admissible(t1, num, den, c.deg_l) and _part_admissible(t2, num, den, c.deg_l)):
                continue
            found.append(
                Decomposition(
                    t1,
                    t2,
                    chi_12=chi(t2, t1, c),
                    chi_21=chi(t1, t2, c),
                    same_sign_ranks=(t1.p - t1.q) * (t2.p - t2.q) >= 0,
                )
            )
    found.sort(key=lambda d: (d.t1.as_tuple(), d.t2.as_tuple()))
    return found


@dataclass(frozen=True)
class FlipCodimBound:
    bound_plus: int
    bound_minus: int
    notes: Tuple[str, ...] = ()


def flip_codim_bound(
    t: HiggsType,
    c: CurveData,
    alpha_c: RationalLike,
    decompositions: Optional[List[Decomposition]] = None,
) -> Optional[FlipCodimBound]:
    """Codimension estimates for the flip loci on both sides of a wall from
    two-step splits, or ``None`` when no split exists."""
    if decompositions is None:
        decompositions = enumerate_decompositions(t, c, alpha_c)
    else:
        _require_positive_deg_l(c)
    if not decompositions:
        return None
    plus = min(-d.chi_21 for d in decompositions)
    minus = min(-d.chi_12 for d in decompositions)
    notes = []
    if plus <= 0 or minus <= 0:
        notes.append(
            f"nonpositive codimension estimate ({plus}, {minus}): the positivity argument does not apply"
        )
    mixed = sum(1 for d in decompositions if not d.same_sign_ranks)
    if mixed:
        notes.append(f"{mixed} split(s) with p_i - q_i of opposite signs")
    return FlipCodimBound(plus, minus, tuple(notes))


def _case_windows(t: HiggsType, dl: int):
    """``(case, slope condition, window)`` for the rank-order cases of the
    birationality and irreducibility results."""
    p, q = t.p, t.q
    d = slope_difference(t)
    e = -d
    out = []
    if q <= p:
        upper = Fraction(2 * p * q, p * q - q * q + p + q) * (e - dl) + dl
        out.append((1, d > -dl, ExtendedInterval(Fraction(0), upper, True, False)))
    if p <= q:
        lower = Fraction(2 * p * q, p * q - p * p + p + q) * (e + dl) - dl
        out.append((2, d < dl, ExtendedInterval(lower, Fraction(0), False, True)))
    return out


def is_wall(t: HiggsType, alpha: Fraction) -> bool:
    return bool(_numerical_walls(t, ExtendedInterval.closed(alpha, alpha)))


def birationality_verdict(
    t: HiggsType,
    c: CurveData,
    alpha_c: RationalLike,
    decompositions: Optional[List[Decomposition]] = None,
) -> Verdict:
    """Birationality of the stable moduli on the two sides of a wall.

    The window condition is read on the one-sided germs ``alpha_c -/+ eps``:
    both must lie in the case window for all small ``eps > 0``.
    """
    _require_positive_deg_l(c)
    alpha = as_rational(alpha_c)
    critical = is_wall(t, alpha)
    cases = _case_windows(t, c.deg_l)
    chosen = None
    for case, slope_ok, win in cases:
        if slope_ok and win.contains_left_of(alpha) and win.contains_right_of(alpha):
            chosen = (case, win)
            break
    if chosen is None:
        case, win = cases[0][0], cases[0][2]
    else:
        case, win = chosen
    notes = []
    details: Dict[str, DetailValue] = {"case": case if chosen else 0}
    success = Conclusion.STABLE_LOCI_BIRATIONAL
    if critical and chosen:
        if not genericity(t).alpha_independent_possible:
            success = Conclusion.FULL_MODULI_BIRATIONAL
        if decompositions is None:
            decompositions = enumerate_decompositions(t, c, alpha)
        if not decompositions:
            notes.append("wall is Numerical: no flip loci at type level")
    elif not chosen:
        notes.append(f"alpha_c germs not inside case ({case}) window {win}")
    return Verdict.build(
        [("alpha_c_is_wall", critical), ("case_window_contains_germs", chosen is not None)],
        success,
        win,
        notes=notes,
        details=details,
    )


def irreducibility_verdict(t: HiggsType, c: CurveData, alpha: RationalLike) -> Verdict:
    alpha = as_rational(alpha)
    k = 2 * c.genus - 2
    tau = toledo(t)
    cases = _case_windows(t, k)
    chosen = None
    for case, slope_ok, win in cases:
        if slope_ok and win.contains(alpha):
            chosen = (case, win)
            break
    case, win = chosen if chosen else (cases[0][0], cases[0][2])
    return Verdict.build(
        [
            ("canonical_twist", c.canonical),
            ("coprime_rank_degree", math.gcd(t.p + t.q, t.a + t.b) == 1),
            ("toledo_bound", abs(tau) <= min(t.p, t.q) * k),
            ("alpha_in_case_window", chosen is not None),
        ],
        Conclusion.IRREDUCIBLE,
        win,
        details={"case": case if chosen else 0},
    )


class ToledoCase(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NEITHER = "Neither"


@dataclass(frozen=True)
class ToledoRange:
    case: ToledoCase
    interval: Optional[ExtendedInterval]


def toledo_meaningful_range(t: HiggsType, c: CurveData) -> ToledoRange:
    p, q, dl = t.p, t.q, c.deg_l
    tau = toledo(t)
    top = Fraction(2 * p * q, p + q) * dl
    if q <= p:
        iv = ExtendedInterval.open(-top, -(q - 1) * dl)
        if iv.contains(tau):
            return ToledoRange(ToledoCase.CASE1, iv)
    if p <= q:
        iv = ExtendedInterval.open((p - 1) * dl, top)
        if iv.contains(tau):
            return ToledoRange(ToledoCase.CASE2, iv)
    return ToledoRange(ToledoCase.NEITHER, None)


def gl_comparison_window(t: HiggsType, c: CurveData) -> Verdict:
    """For p = q: the alpha-window where alpha-semistability implies
    semistability of the associated twisted GL(2p) Higgs bundle."""
    p, dl = t.p, c.deg_l
    if t.p != t.q:
        return Verdict.build(
            [("equal_ranks", False)], Conclusion.GL_SEMISTABLE, ExtendedInterval.empty()
        )
    d = slope_difference(t)
    e = -d
    windows = []
    details: Dict[str, DetailValue] = {}
    if d > -dl:
        alpha_0 = p * (e - dl) + dl
        windows.append(ExtendedInterval(Fraction(0), alpha_0, True, False))
        details["alpha_0"] = format_rational(alpha_0)
    if d < dl:
        alpha_0p = p * (e + dl) - dl
        windows.append(ExtendedInterval(alpha_0p, Fraction(0), False, True))
        details["alpha_0_prime"] = format_rational(alpha_0p)
    nonempty = [w for w in windows if not w.is_empty()]
    # at most one of the two windows can be nonempty
    if nonempty:
        used = nonempty[0]
    else:
        used = windows[0] if windows else ExtendedInterval.empty()
    notes = [f"window {w}" + ("" if not w.is_empty() else " is empty") for w in windows]
    return Verdict.build(
        [("equal_ranks", True), ("nonempty_window", bool(nonempty))],
        Conclusion.GL_SEMISTABLE,
        used,
        notes=notes,
        details=details,
    )
