from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from upq_walls import oracle
from upq_walls.core_types import CurveData, ExtendedInterval, HiggsType
from upq_walls.errors import RadiusTooSmall, WindowUnbounded
from upq_walls.invariants import chi
from upq_walls.parameter_space import enumerate_walls

C22 = CurveData(2, 2)
FLAGSHIP = HiggsType(3, 2, 0, 2)
TOY = HiggsType(1, 1, 0, 0)

main_types = st.builds(HiggsType, st.integers(1, 4), st.integers(1, 4), st.integers(-5, 5), st.integers(-5, 5))


@st.composite
def windows(draw):
    lo = F(draw(st.integers(-30, 30)), draw(st.integers(1, 6)))
    width = F(draw(st.integers(0, 30)), draw(st.integers(1, 6)))
    return ExtendedInterval(lo, lo + width, draw(st.booleans()), draw(st.booleans()))


def test_is_critical_examples():
    r = oracle.is_critical(FLAGSHIP, F(1, 6))
    assert r.critical and r.witnesses == ((0, 2, 1), (3, 0, 1))
    assert not oracle.is_critical(FLAGSHIP, 0)
    assert not oracle.is_critical(TOY, 1)


def test_walls_by_scan_examples():
    assert oracle.walls_by_scan(TOY, ExtendedInterval.closed(-3, 3)) == [-2, 0, 2]
    assert oracle.walls_by_scan(FLAGSHIP, ExtendedInterval.closed(0, 1)) == [F(1, 6), 1]
    assert oracle.walls_by_scan(HiggsType(2, 1, 0, 1), ExtendedInterval.closed_open(0, 1)) == []
    with pytest.raises(WindowUnbounded):
        oracle.walls_by_scan(TOY, ExtendedInterval.real_line())


def test_bruteforce_examples():
    assert oracle.decompositions_bruteforce(FLAGSHIP, C22, F(1, 6), 10) == []
    at_one = oracle.decompositions_bruteforce(FLAGSHIP, C22, 1, 10)
    engine = enumerate_walls(FLAGSHIP, C22, ExtendedInterval.closed(1, 1))[0]
    assert [d.key() for d in at_one] == sorted(oracle.decomposition_key(d) for d in engine.decompositions)
    toy = oracle.decompositions_bruteforce(TOY, C22, 0, 5)
    assert [(d.t1, d.t2) for d in toy] == [(HiggsType(0, 1, 0, 0), HiggsType(1, 0, 0, 0))]


def test_bruteforce_radius_checked():
    need = oracle.analytic_degree_bound(FLAGSHIP, C22, 1)
    assert need > 0
    with pytest.raises(RadiusTooSmall):
        oracle.decompositions_bruteforce(FLAGSHIP, C22, 1, need - 1)
    # a larger radius finds nothing new
    assert oracle.decompositions_bruteforce(FLAGSHIP, C22, 1, need) == oracle.decompositions_bruteforce(
        FLAGSHIP, C22, 1, need + 7
    )


def test_verify_identities_examples():
    r = oracle.verify_identities([(TOY, C22)])
    assert r.passed and r.mismatches == ()
    r = oracle.verify_identities([(FLAGSHIP, C22)])
    assert r.passed and r.checked >= 6


def test_corrupted_chi_is_caught():
    def off_by_one(s, t, c):
        return chi(s, t, c) + (1 if s == t else 0)

    r = oracle.verify_identities([(FLAGSHIP, C22)], chi_impl=off_by_one)
    assert not r.passed
    assert any(desc.startswith("dimension identity") for desc, _, _ in r.mismatches)


def test_report_merge():
    a = oracle.OracleReport.from_results(2, [])
    b = oracle.OracleReport.from_results(3, [("x", 1, 2)])
    m = a.merged(b)
    assert (m.checked, m.passed, m.mismatches) == (5, False, (("x", "1", "2"),))


def test_cross_check_flags_tampered_walls():
    window = ExtendedInterval.closed(0, 1)
    walls = enumerate_walls(FLAGSHIP, C22, window)
    assert oracle.cross_check(FLAGSHIP, C22, window, walls).passed
    assert not oracle.cross_check(FLAGSHIP, C22, window, walls[:1]).passed


@settings(max_examples=80, deadline=None)
@given(main_types, windows())
def test_scan_equals_enumeration(t, window):
    walls = [w.alpha_c for w in enumerate_walls(t, C22, window, refine=False)]
    assert oracle.walls_by_scan(t, window) == walls
    for alpha in walls:
        assert oracle.denominator_bound_ok(t, alpha)


@settings(max_examples=80, deadline=None)
@given(main_types, windows(), st.integers(-60, 60), st.integers(1, 12))
def test_is_critical_iff_in_scan(t, window, k, den):
    alpha = window.lower + F(k, den) * (window.upper - window.lower) / 60
    if not window.contains(alpha):
        return
    assert bool(oracle.is_critical(t, alpha)) == (alpha in oracle.walls_by_scan(t, window))
