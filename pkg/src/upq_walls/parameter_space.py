"""The alpha-line of a fixed type: admissible range, Higgs-field
thresholds, critical values with their witnesses, and chambers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core_types import (
    CurveData,
    ExtendedInterval,
    HiggsType,
    RationalLike,
    as_rational,
    format_rational,
)
from .errors import OutOfRange, WindowUnbounded
from .invariants import slope_difference


@dataclass(frozen=True)
class ParamRange:
    range: ExtendedInterval
    finite: bool


def alpha_range(t: HiggsType, c: CurveData) -> ParamRange:
    """Closed interval ``[alpha_m, alpha_M]`` outside of which no
    alpha-semistable object of type ``t`` exists; the whole line if p = q."""
    p, q = t.p, t.q
    if p == q:
        return ParamRange(ExtendedInterval.real_line(), False)
    d = slope_difference(t)
    dl = c.deg_l
    k = abs(q - p)
    lead = Fraction(2 * max(p, q), k)
    spread = Fraction(p + q, k) * dl
    lo = -lead * d - spread if d > -dl else -d
    hi = -lead * d + spread if d < dl else -d
    return ParamRange(ExtendedInterval(lo, hi, True, True), True)


@dataclass(frozen=True)
class Thresholds:
    alpha_i: Tuple[Fraction, ...]
    alpha_prime_j: Tuple[Fraction, ...]
    alpha_t: Optional[Fraction]
    alpha_t_prime: Optional[Fraction]


def thresholds(t: HiggsType, c: CurveData) -> Thresholds:
    p, q, dl = t.p, t.q, c.deg_l
    e = -slope_difference(t)  # mu(W) - mu(V)
    alpha_i: Tuple[Fraction, ...] = ()
    alpha_prime_j: Tuple[Fraction, ...] = ()
    alpha_t = alpha_t_prime = None
    if q <= p:
        alpha_i = tuple(
            Fraction(2 * p * q, q * (p - q) + (i + 1) * (p + q)) * (e - dl) + dl
            for i in range(q)
        )
    if p <= q:
        alpha_prime_j = tuple(
            Fraction(2 * p * q, p * (q - p) + (j + 1) * (p + q)) * (e + dl) - dl
            for j in range(p)
        )
    if p >= q and e > -dl:
        alpha_t = Fraction(2 * p * q, p * q - q * q + p + q) * (e + dl) - dl
    if p <= q and e < dl:
        alpha_t_prime = Fraction(2 * p * q, p * q - p * p + p + q) * (e - dl) + dl
    return Thresholds(alpha_i, alpha_prime_j, alpha_t, alpha_t_prime)


class FieldStatusKind(str, enum.Enum):
    INJECTIVE = "Injective"
    ZERO = "Zero"
    KERNEL_RANK_BELOW = "KernelRankBelow"
    KERNEL_RANK_ABOVE = "KernelRankAbove"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class FieldStatus:
    """What is known about a Higgs field: ``KernelRankBelow(n)`` means
    ``rk ker < n`` and ``KernelRankAbove(n)`` means ``rk ker > n``."""

    kind: FieldStatusKind
    bound: Optional[int] = None

    def __str__(self) -> str:
        if self.bound is None:
            return self.kind.value
        return f"{self.kind.value}({self.bound})"


UNKNOWN_STATUS = FieldStatus(FieldStatusKind.UNKNOWN)


@dataclass(frozen=True)
class FieldProfile:
    beta_status: FieldStatus
    gamma_status: FieldStatus
    beta_surjective: Optional[bool]
    gamma_surjective: Optional[bool]
    extreme_note: Optional[str] = None


def _below_status(i: int) -> FieldStatus:
    if i == 1:
        return FieldStatus(FieldStatusKind.INJECTIVE)
    return FieldStatus(FieldStatusKind.KERNEL_RANK_BELOW, i)


def _above_status(i: int, full: int) -> FieldStatus:
    if i == full - 1:
        return FieldStatus(FieldStatusKind.ZERO)
    return FieldStatus(FieldStatusKind.KERNEL_RANK_ABOVE, i)


def field_profile(t: HiggsType, c: CurveData, alpha: RationalLike) -> FieldProfile:
    """Kernel-rank information on beta and gamma forced by alpha-semistability.

    Each clause is a one-way implication; when none applies the status is
    ``Unknown``.
    """
    alpha = as_rational(alpha)
    rng = alpha_range(t, c).range
    if not rng.contains(alpha):
        raise OutOfRange(f"alpha = {format_rational(alpha)} outside admissible range {rng}")
    p, q, dl = t.p, t.q, c.deg_l
    d = slope_difference(t)
    th = thresholds(t, c)

    beta = UNKNOWN_STATUS
    if p >= q and d > -dl:
        for i in range(1, q + 1):
            if alpha < th.alpha_i[i - 1]:
                beta = _below_status(i)
                break
    elif p >= q and d < -dl:
        for i in range(q - 1, 0, -1):
            if alpha < th.alpha_i[i - 1]:
                beta = _above_status(i, q)
                break

    gamma = UNKNOWN_STATUS
    if p <= q and d < dl:
        for j in range(1, p + 1):
            if alpha > th.alpha_prime_j[j - 1]:
                gamma = _below_status(j)
                break
    elif p <= q and d > dl:
        for j in range(p - 1, 0, -1):
            if alpha > th.alpha_prime_j[j - 1]:
                gamma = _above_status(j, p)
                break

    gamma_surj: Optional[bool] = None
    if th.alpha_t is not None and alpha > th.alpha_t:
        gamma_surj = True
    elif gamma.kind is FieldStatusKind.ZERO:
        gamma_surj = False
    beta_surj: Optional[bool] = None
    if th.alpha_t_prime is not None and alpha < th.alpha_t_prime:
        beta_surj = True
    elif beta.kind is FieldStatusKind.ZERO:
        beta_surj = False

    notes = []
    if rng.upper is not None and alpha == rng.upper:
        if d < dl:
            notes.append(f"rk(gamma) = {min(p, q)} at alpha = alpha_M")
        elif d > dl:
            notes.append("gamma = 0 at alpha = alpha_M")
    if rng.lower is not None and alpha == rng.lower:
        if d > -dl:
            notes.append(f"rk(beta) = {min(p, q)} at alpha = alpha_m")
        elif d < -dl:
            notes.append("beta = 0 at alpha = alpha_m")
    note = "; ".join(notes) if notes else None
    return FieldProfile(beta, gamma, beta_surj, gamma_surj, note)


@dataclass(frozen=True, order=True)
class WitnessTriple:
    p_sub: int
    q_sub: int
    s_sub: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.p_sub, self.q_sub, self.s_sub)


class WallStatus(str, enum.Enum):
    NUMERICAL = "Numerical"
    DECOMPOSABLE = "Decomposable"


@dataclass(frozen=True)
class Wall:
    alpha_c: Fraction
    witnesses: Tuple[WitnessTriple, ...]
    status: WallStatus = WallStatus.NUMERICAL
    decompositions: tuple = field(default=())


def sub_rank_pairs(t: HiggsType):
    """Rank pairs ``(p', q')`` of proper sub-types whose alpha-slope can
    cross that of ``t``, i.e. ``p'/(p'+q') != p/(p+q)``."""
    n = t.p + t.q
    for ps in range(t.p + 1):
        for qs in range(t.q + 1):
            if ps == 0 and qs == 0:
                continue
            if ps * n == t.p * (ps + qs):
                continue
            yield ps, qs


def wall_from_witness(t: HiggsType, w: WitnessTriple) -> Optional[Fraction]:
    n = t.p + t.q
    ns = w.p_sub + w.q_sub
    den = w.p_sub * n - t.p * ns
    if den == 0:
        return None
    return Fraction((t.a + t.b) * ns - w.s_sub * n, den)


def _require_finite(window: ExtendedInterval) -> None:
    if not window.bounded:
        raise WindowUnbounded(f"window {window} is unbounded; give finite endpoints")


def _numerical_walls(t: HiggsType, window: ExtendedInterval) -> Dict[Fraction, List[WitnessTriple]]:
    _require_finite(window)
    found: Dict[Fraction, List[WitnessTriple]] = {}
    if window.is_empty():
        return found
    n = t.p + t.q
    total = t.a + t.b
    lo_n, lo_d = window.lower.numerator, window.lower.denominator
    hi_n, hi_d = window.upper.numerator, window.upper.denominator
    keyed: Dict[Tuple[int, int], List[WitnessTriple]] = {}
    for ps, qs in sub_rank_pairs(t):
        ns = ps + qs
        den = ps * n - t.p * ns
        # alpha(s) = (total*ns - s*n)/den is monotone in s; s = (total*ns - alpha*den)/n
        x1 = total * ns * lo_d - lo_n * den
        x2 = total * ns * hi_d - hi_n * den
        e_lo = min(Fraction(x1, n * lo_d), Fraction(x2, n * hi_d))
        e_hi = max(Fraction(x1, n * lo_d), Fraction(x2, n * hi_d))
        s_lo = -((-e_lo.numerator) // e_lo.denominator)
        s_hi = e_hi.numerator // e_hi.denominator
        sign = 1 if den > 0 else -1
        for s in range(s_lo, s_hi + 1):
            num = total * ns - s * n
            g = math.gcd(num, den)
            key = (sign * num // g, sign * den // g)
            if s == s_lo or s == s_hi:
                # exact endpoint test in integers (key[1] > 0)
                c_lo = key[0] * lo_d - lo_n * key[1]
                c_hi = hi_n * key[1] - key[0] * hi_d
                if c_lo < 0 or c_hi < 0:
                    continue
                if (c_lo == 0 and not window.lower_closed) or (c_hi == 0 and not window.upper_closed):
                    continue
            keyed.setdefault(key, []).append(WitnessTriple(ps, qs, s))
    for key, wits in keyed.items():
        found[Fraction(*key)] = wits
    return found


def enumerate_walls(
    t: HiggsType,
    c: CurveData,
    window: Optional[ExtendedInterval] = None,
    refine: bool = True,
) -> List[Wall]:
    """All critical values of ``t`` inside a finite window, in increasing
    order, each carrying every witness and (if ``refine``) refined."""
    if window is None:
        rng = alpha_range(t, c)
        if not rng.finite:
            raise WindowUnbounded("p = q: the admissible range is unbounded; give a window")
        window = rng.range
    found = _numerical_walls(t, window)
    walls = []
    for alpha in sorted(found):
        wall = Wall(alpha, tuple(sorted(found[alpha])))
        walls.append(refine_wall(t, wall, c) if refine else wall)
    return walls


def refine_wall(t: HiggsType, wall: Wall, c: CurveData) -> Wall:
    """Mark the wall Decomposable if ``t`` splits into two valid parts of
    equal slope at the wall, else Numerical."""
    from .theorem_engine import enumerate_decompositions

    splits = {(w.p_sub, w.q_sub) for w in wall.witnesses}
    decs = enumerate_decompositions(t, c, wall.alpha_c, _rank_pairs=splits)
    status = WallStatus.DECOMPOSABLE if decs else WallStatus.NUMERICAL
    return Wall(wall.alpha_c, wall.witnesses, status, tuple(decs))


@dataclass(frozen=True)
class Chamber:
    interval: ExtendedInterval
    sample_alpha: Fraction
    profile: Optional[FieldProfile]


def chamber_intervals(window: ExtendedInterval, wall_alphas: List[Fraction]) -> List[ExtendedInterval]:
    _require_finite(window)
    cuts = [window.lower] + [a for a in wall_alphas if window.lower < a < window.upper] + [window.upper]
    return [ExtendedInterval.open(lo, hi) for lo, hi in zip(cuts, cuts[1:]) if lo < hi]


def chambers(
    t: HiggsType,
    c: CurveData,
    window: Optional[ExtendedInterval] = None,
    walls: Optional[List[Wall]] = None,
) -> List[Chamber]:
    """Maximal open wall-free subintervals of the window, sampled at their
    midpoints. The profile is ``None`` when the sample lies outside the
    admissible range."""
    rng = alpha_range(t, c).range
    if window is None:
        if not rng.bounded:
            raise WindowUnbounded("p = q: the admissible range is unbounded; give a window")
        window = rng
    _require_finite(window)
    if walls is None:
        walls = enumerate_walls(t, c, window, refine=False)
    result = []
    for iv in chamber_intervals(window, [w.alpha_c for w in walls]):
        sample = iv.midpoint()
        profile = field_profile(t, c, sample) if rng.contains(sample) else None
        result.append(Chamber(iv, sample, profile))
    return result
