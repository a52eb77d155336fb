"""Brute-force cross-checks for the engine.

The arithmetic here is re-derived from the defining equations (slopes,
Riemann-Roch, rank-resolved Milnor-Wood bounds) and deliberately does not
call into ``invariants`` or ``parameter_space``; :func:`verify_identities`
and :func:`cross_check` are the only places that look at engine output,
and they only compare it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import _kernels
from .core_types import CurveData, ExtendedInterval, HiggsType, RationalLike, as_rational
from .errors import RadiusTooSmall, WindowUnbounded

DEFAULT_SYMMETRY_WINDOW = ExtendedInterval.closed(Fraction(-5, 2), Fraction(4))


@dataclass(frozen=True)
class OracleReport:
    checked: int
    mismatches: Tuple[Tuple[str, str, str], ...]
    passed: bool

    @classmethod
    def from_results(cls, checked: int, mismatches) -> "OracleReport":
        mismatches = tuple((str(a), str(b), str(c)) for a, b, c in mismatches)
        return cls(checked, mismatches, not mismatches)

    def merged(self, other: "OracleReport") -> "OracleReport":
        return OracleReport.from_results(self.checked + other.checked, self.mismatches + other.mismatches)


def _crossing_pairs(p: int, q: int):
    n = p + q
    for ps in range(p + 1):
        for qs in range(q + 1):
            if (ps or qs) and ps * n != p * (ps + qs):
                yield ps, qs


@dataclass(frozen=True)
class CriticalResult:
    critical: bool
    witnesses: Tuple[Tuple[int, int, int], ...]

    def __bool__(self) -> bool:
        return self.critical


def is_critical(t: HiggsType, alpha: RationalLike) -> CriticalResult:
    """Direct test: does some sub-rank pair give an integral degree ``s``
    with the same alpha-slope as ``t``?"""
    alpha = as_rational(alpha)
    n = t.p + t.q
    target = Fraction(t.a + t.b, n) + alpha * Fraction(t.p, n)
    found = []
    for ps, qs in _crossing_pairs(t.p, t.q):
        s = (ps + qs) * target - alpha * ps
        if s.denominator == 1:
            found.append((ps, qs, s.numerator))
    return CriticalResult(bool(found), tuple(sorted(found)))


def candidate_denominators(t: HiggsType) -> List[int]:
    n = t.p + t.q
    return sorted({abs(ps * n - t.p * (ps + qs)) for ps, qs in _crossing_pairs(t.p, t.q)})


def walls_by_scan(t: HiggsType, window: ExtendedInterval, backend: Optional[str] = None) -> List[Fraction]:
    """Every critical value in a finite window, found by scanning all
    rationals whose denominator is a possible wall denominator."""
    if not window.bounded:
        raise WindowUnbounded(f"window {window} is unbounded")
    if window.is_empty():
        return []
    n = t.p + t.q
    pairs = list(_crossing_pairs(t.p, t.q))
    hits = set()
    for den in candidate_denominators(t):
        k_lo = math.ceil(window.lower * den)
        k_hi = math.floor(window.upper * den)
        for k in _kernels.critical_numerators(k_lo, k_hi, den, pairs, t.p, n, t.a + t.b, backend):
            alpha = Fraction(k, den)
            if window.contains(alpha):
                hits.add(alpha)
    return sorted(hits)


def denominator_bound_ok(t: HiggsType, alpha: Fraction) -> bool:
    return any(d % alpha.denominator == 0 for d in candidate_denominators(t))


def chi_riemann_roch(sub: HiggsType, t: HiggsType, c: CurveData) -> int:
    """Euler characteristic of the two-term Hom-complex computed term by
    term: ``Hom(V',V) + Hom(W',W) -> Hom(W',V L) + Hom(V',W L)``."""

    def hom(r1, d1, r2, d2):
        # chi(Hom(A, B)) for A of rank r1, degree d1 and B of rank r2, degree d2
        return r1 * r2 * (1 - c.genus) + r1 * d2 - r2 * d1

    dl = c.deg_l
    c0 = hom(sub.p, sub.a, t.p, t.a) + hom(sub.q, sub.b, t.q, t.b)
    c1 = hom(sub.q, sub.b, t.p, t.a + t.p * dl) + hom(sub.p, sub.a, t.q, t.b + t.q * dl)
    return c0 - c1


def dimension_closed_form(t: HiggsType, c: CurveData) -> int:
    return (c.genus - 1) * (t.q - t.p) ** 2 + 2 * t.p * t.q * c.deg_l + 1


@dataclass(frozen=True)
class OracleDecomposition:
    t1: HiggsType
    t2: HiggsType
    chi_12: int
    chi_21: int
    same_sign_ranks: bool

    def key(self):
        return (self.t1.as_tuple(), self.t2.as_tuple(), self.chi_12, self.chi_21, self.same_sign_ranks)


def _mw_extremes(pp: int, qq: int, num: int, den: int, dl: int) -> Tuple[int, int]:
    """Rank-maximised Toledo bounds at ``alpha = num/den``: the min over ``r``
    of ``r(alpha - dL) - alpha*c`` and the max of ``r(dL + alpha) - alpha*c``
    with ``c = 2pq/(p+q)``, both as numerators over ``(p+q)*den``."""
    nn = pp + qq
    m = min(pp, qq)
    cnum = 2 * pp * qq * num
    hi = max(r * nn * (dl * den + num) - cnum for r in range(m + 1))
    lo = min(r * nn * (num - dl * den) - cnum for r in range(m + 1))
    return lo, hi


def analytic_degree_bound(t: HiggsType, c: CurveData, alpha_c: RationalLike) -> int:
    """Upper bound on ``|a1|, |b1|`` over all equal-slope splits whose main
    parts satisfy the Milnor-Wood bound at ``alpha_c``."""
    alpha = as_rational(alpha_c)
    num, den = alpha.numerator, alpha.denominator
    n = t.p + t.q
    total = t.a + t.b
    bound = 0
    for p1 in range(t.p + 1):
        for q1 in range(t.q + 1):
            n1 = p1 + q1
            if n1 == 0 or n1 == n:
                continue
            # s1 = n1*(total + alpha*p)/n - alpha*p1
            s_num = n1 * (total * den + num * t.p) - n * num * p1
            if s_num % (n * den):
                continue
            s1 = s_num // (n * den)
            if p1 and q1:
                lo, hi = _mw_extremes(p1, q1, num, den, c.deg_l)
                # |tau1| <= T/(n1*den); a1 = tau1/2 + p1*s1/n1 and b1 = s1 - a1
                tau_half = -(-max(abs(lo), abs(hi)) // (2 * n1 * den))
                cand = 2 * abs(s1) + tau_half
            else:
                # a zero rank forces (a1, b1) to (0, s1) or (s1, 0)
                cand = abs(s1)
            bound = max(bound, cand)
    return bound


def decompositions_bruteforce(
    t: HiggsType,
    c: CurveData,
    alpha_c: RationalLike,
    degree_radius: Optional[int] = None,
    backend: Optional[str] = None,
) -> List[OracleDecomposition]:
    """Exhaustive loop over ``(p1, q1, a1, b1)`` with ``|a1|, |b1| <= radius``.

    The radius must cover :func:`analytic_degree_bound`, otherwise the
    search could silently miss splits; ``None`` uses the bound itself.
    """
    alpha = as_rational(alpha_c)
    need = analytic_degree_bound(t, c, alpha)
    if degree_radius is None:
        degree_radius = need
    if degree_radius < need:
        raise RadiusTooSmall(f"degree radius {degree_radius} < analytic bound {need}")
    rows = _kernels.bruteforce_splits(
        t.p, t.q, t.a, t.b, alpha.numerator, alpha.denominator, c.deg_l, degree_radius, backend
    )
    out = []
    for p1, q1, a1, b1 in rows:
        t1 = HiggsType(p1, q1, a1, b1)
        t2 = HiggsType(t.p - p1, t.q - q1, t.a - a1, t.b - b1)
        out.append(
            OracleDecomposition(
                t1,
                t2,
                chi_12=chi_riemann_roch(t2, t1, c),
                chi_21=chi_riemann_roch(t1, t2, c),
                same_sign_ranks=(p1 - q1) * (t2.p - t2.q) >= 0,
            )
        )
    out.sort(key=OracleDecomposition.key)
    return out


def decomposition_key(d) -> tuple:
    return (d.t1.as_tuple(), d.t2.as_tuple(), d.chi_12, d.chi_21, d.same_sign_ranks)


# ------------------------------------------------------------- identity suite


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _interval_key(i: ExtendedInterval):
    return (i.lower, i.upper, i.lower_closed, i.upper_closed)


def _random_split(t: HiggsType, rng: random.Random) -> Optional[Tuple[HiggsType, HiggsType]]:
    for _ in range(20):
        p1 = rng.randint(0, t.p)
        q1 = rng.randint(0, t.q)
        if (p1, q1) in ((0, 0), (t.p, t.q)):
            continue
        a1 = rng.randint(-6, 6) if p1 else 0
        b1 = rng.randint(-6, 6) if q1 else 0
        if p1 == t.p:
            a1 = t.a
        if q1 == t.q:
            b1 = t.b
        return HiggsType(p1, q1, a1, b1), HiggsType(t.p - p1, t.q - q1, t.a - a1, t.b - b1)
    return None


def _check_one(t: HiggsType, c: CurveData, chi_impl, window: ExtendedInterval, splits: int):
    from . import invariants as inv
    from . import parameter_space as ps

    checked = 0
    bad = []

    def check(name, expected, actual):
        nonlocal checked
        checked += 1
        if expected != actual:
            bad.append((f"{name} for t={t}, g={c.genus}, dL={c.deg_l}", _fmt(expected), _fmt(actual)))

    check("dimension identity", dimension_closed_form(t, c), 1 - chi_impl(t, t, c))
    check("chi vs Riemann-Roch", chi_riemann_roch(t, t, c), chi_impl(t, t, c))

    rng = random.Random(f"{t}|{c.genus}|{c.deg_l}")
    for _ in range(splits):
        pair = _random_split(t, rng)
        if pair is None:
            continue
        t1, t2 = pair
        whole = chi_impl(t, t, c)
        parts = chi_impl(t1, t1, c) + chi_impl(t2, t2, c) + chi_impl(t1, t2, c) + chi_impl(t2, t1, c)
        check("chi additivity", whole, parts)
        check("chi additive in first slot", chi_impl(t, t1, c), chi_impl(t1, t1, c) + chi_impl(t2, t1, c))
        check("chi additive in second slot", chi_impl(t1, t, c), chi_impl(t1, t1, c) + chi_impl(t1, t2, c))
        check("chi vs Riemann-Roch on split", chi_riemann_roch(t1, t2, c), chi_impl(t1, t2, c))

    tau = Fraction(2 * (t.q * t.a - t.p * t.b), t.p + t.q)
    check("toledo", tau, inv.toledo(t))
    check("toledo under duality", -inv.toledo(t), inv.toledo(inv.dual_type(t)))
    check("toledo under sigma", -inv.toledo(t), inv.toledo(inv.sigma_type(t)))

    base = [w.alpha_c for w in ps.enumerate_walls(t, c, window, refine=False)]
    check("walls vs scan", walls_by_scan(t, window), base)
    neg = sorted(-x for x in base)
    flipped = window.negated()
    check(
        "walls under sigma",
        neg,
        [w.alpha_c for w in ps.enumerate_walls(inv.sigma_type(t), c, flipped, refine=False)],
    )
    check(
        "walls under duality",
        neg,
        [w.alpha_c for w in ps.enumerate_walls(inv.dual_type(t), c, flipped, refine=False)],
    )

    rng_t = ps.alpha_range(t, c).range
    if t.p != t.q:
        check("range under sigma", _interval_key(rng_t.negated()), _interval_key(ps.alpha_range(inv.sigma_type(t), c).range))
        check("range under duality", _interval_key(rng_t.negated()), _interval_key(ps.alpha_range(inv.dual_type(t), c).range))

    mw0 = inv.mw_interval(t.p, t.q, 0, c)
    m = min(t.p, t.q)
    check("MW symmetry at alpha=0", (-m * c.deg_l, m * c.deg_l), (mw0.tau_min, mw0.tau_max))

    d = Fraction(t.a, t.p) - Fraction(t.b, t.q)
    dl = c.deg_l
    th = ps.thresholds(t, c)
    if t.q <= t.p and d > -dl:
        check("alpha_0 sign law", tau < -(t.q - 1) * dl, th.alpha_i[0] > 0)
    if t.p <= t.q and d < dl:
        check("alpha'_0 sign law", tau > (t.p - 1) * dl, th.alpha_prime_j[0] < 0)
    return checked, bad


def verify_identities(
    sweep: Iterable[Tuple[HiggsType, CurveData]],
    chi_impl: Optional[Callable[[HiggsType, HiggsType, CurveData], int]] = None,
    window: ExtendedInterval = DEFAULT_SYMMETRY_WINDOW,
    splits: int = 3,
) -> OracleReport:
    """Dimension identity, chi additivity, Toledo/wall/range symmetries under
    sigma and duality, MW symmetry at alpha=0 and the alpha_0 sign law.

    ``chi_impl`` defaults to the engine's chi; tests pass a corrupted one to
    confirm the suite notices.
    """
    if chi_impl is None:
        from .invariants import chi as chi_impl
    checked = 0
    bad: List[Tuple[str, str, str]] = []
    for t, c in sweep:
        n, b = _check_one(t, c, chi_impl, window, splits)
        checked += n
        bad.extend(b)
    return OracleReport.from_results(checked, bad)


def cross_check(t: HiggsType, c: CurveData, window: ExtendedInterval, walls: Sequence) -> OracleReport:
    """Compare engine walls and decompositions with the brute-force oracle."""
    checked = 1
    bad = []
    engine = [w.alpha_c for w in walls]
    scan = walls_by_scan(t, window)
    if engine != scan:
        bad.append((f"wall set of {t} on {window}", _fmt(scan), _fmt(engine)))
    for w in walls:
        checked += 2
        crit = is_critical(t, w.alpha_c)
        wit = tuple(sorted(x.as_tuple() for x in w.witnesses))
        if crit.witnesses != wit:
            bad.append((f"witnesses at {w.alpha_c}", _fmt(crit.witnesses), _fmt(wit)))
        expected = [d.key() for d in decompositions_bruteforce(t, c, w.alpha_c)]
        actual = sorted(decomposition_key(d) for d in w.decompositions)
        if expected != actual:
            bad.append((f"decompositions at {w.alpha_c}", _fmt(expected), _fmt(actual)))
    return OracleReport.from_results(checked, bad)
