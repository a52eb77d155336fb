"""Closed-form invariants of types: slopes, Toledo invariant, Euler
characteristic of the Hom-complex, expected dimension, Milnor-Wood bounds,
the two involutions and genericity of the type."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core_types import CurveData, HiggsType, RationalLike, as_rational


def mu(t: HiggsType) -> Fraction:
    return Fraction(t.a + t.b, t.p + t.q)


def mu_alpha(t: HiggsType, alpha: RationalLike) -> Fraction:
    alpha = as_rational(alpha)
    return Fraction(t.a + t.b, t.p + t.q) + alpha * Fraction(t.p, t.p + t.q)


def slope_difference(t: HiggsType) -> Fraction:
    """``mu(V) - mu(W) = a/p - b/q`` for a main type."""
    return Fraction(t.a, t.p) - Fraction(t.b, t.q)


def toledo(t: HiggsType) -> Fraction:
    return Fraction(2 * (t.q * t.a - t.p * t.b), t.p + t.q)


def chi(t_sub: HiggsType, t: HiggsType, c: CurveData) -> int:
    """Euler characteristic of the Hom-complex from ``t_sub`` to ``t``."""
    p1, q1, a1, b1 = t_sub.p, t_sub.q, t_sub.a, t_sub.b
    p, q, a, b = t.p, t.q, t.a, t.b
    return (
        (1 - c.genus) * (p1 * p + q1 * q - p1 * q - q1 * p)
        + (q1 - p1) * (b - a)
        + (q - p) * (a1 - b1)
        - (p * q1 + p1 * q) * c.deg_l
    )


def expected_dimension(t: HiggsType, c: CurveData) -> int:
    return 1 - chi(t, t, c)


def expected_dimension_closed_form(t: HiggsType, c: CurveData) -> int:
    return (c.genus - 1) * (t.q - t.p) ** 2 + 2 * t.p * t.q * c.deg_l + 1


class UpperRegime(str, enum.Enum):
    ABOVE_MINUS_DEG_L = "AboveMinusDegL"
    AT_OR_BELOW_MINUS_DEG_L = "AtOrBelowMinusDegL"


class LowerRegime(str, enum.Enum):
    BELOW_DEG_L = "BelowDegL"
    AT_OR_ABOVE_DEG_L = "AtOrAboveDegL"


@dataclass(frozen=True)
class MwInterval:
    tau_min: Fraction
    tau_max: Fraction
    regime_upper: UpperRegime
    regime_lower: LowerRegime

    def is_empty(self) -> bool:
        return self.tau_min > self.tau_max

    def contains(self, tau: Fraction) -> bool:
        return self.tau_min <= tau <= self.tau_max


def mw_interval(p: int, q: int, alpha: RationalLike, c: CurveData) -> MwInterval:
    """Toledo values not excluded for alpha-semistable objects of ranks (p, q).

    The cut points ``alpha = -deg_l`` and ``alpha = deg_l`` belong to the
    regimes ``AtOrBelowMinusDegL`` and ``AtOrAboveDegL``; both formulas agree
    there.
    """
    alpha = as_rational(alpha)
    dl = c.deg_l
    m = min(p, q)
    spread = Fraction(abs(p - q), p + q)
    saturated = -alpha * Fraction(2 * p * q, p + q)
    if alpha > -dl:
        upper, ru = m * (dl - alpha * spread), UpperRegime.ABOVE_MINUS_DEG_L
    else:
        upper, ru = saturated, UpperRegime.AT_OR_BELOW_MINUS_DEG_L
    if alpha < dl:
        lower, rl = m * (-alpha * spread - dl), LowerRegime.BELOW_DEG_L
    else:
        lower, rl = saturated, LowerRegime.AT_OR_ABOVE_DEG_L
    return MwInterval(lower, upper, ru, rl)


def mw_feasible(t: HiggsType, alpha: RationalLike, c: CurveData) -> bool:
    return mw_interval(t.p, t.q, alpha, c).contains(toledo(t))


def dual_type(t: HiggsType) -> HiggsType:
    return HiggsType(t.p, t.q, -t.a, -t.b)


def sigma_type(t: HiggsType) -> HiggsType:
    return HiggsType(t.q, t.p, t.b, t.a)


@dataclass(frozen=True)
class GenericityFlags:
    coprime_rank_sum_exists_m: bool
    coprime_pq: bool
    alpha_independent_possible: bool


def genericity(t: HiggsType) -> GenericityFlags:
    n = t.p + t.q
    # gcd(n, a+b-mp) only depends on m mod n
    exists_m = any(math.gcd(n, t.a + t.b - m * t.p) == 1 for m in range(n))
    coprime_pq = math.gcd(t.p, t.q) == 1
    possible = not (exists_m or (coprime_pq and t.p != t.q))
    return GenericityFlags(exists_m, coprime_pq, possible)
