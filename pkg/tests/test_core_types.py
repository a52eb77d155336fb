from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from upq_walls.core_types import (
    CurveData,
    ExtendedInterval,
    HiggsType,
    as_rational,
    format_rational,
    interval_contains,
    merge_intervals,
    validate_type,
)
from upq_walls.errors import CurveError, DegreeError, RankError

fractions = st.builds(F, st.integers(-5000, 5000), st.integers(1, 50))


def test_validate_type_examples():
    assert validate_type(3, 2, 0, 2, True) == HiggsType(3, 2, 0, 2)
    with pytest.raises(DegreeError):
        validate_type(0, 2, -1, 2, False)
    with pytest.raises(RankError):
        validate_type(0, 0, 0, 0, False)


def test_validate_type_main_requirement():
    assert validate_type(0, 2, 0, 1, False) == HiggsType(0, 2, 0, 1)
    with pytest.raises(RankError):
        validate_type(0, 2, 0, 1, True)
    with pytest.raises(RankError):
        validate_type(-1, 2, 0, 0)


def test_validate_type_exhaustive():
    for p, q, a, b in product(range(4), range(4), range(-2, 3), range(-2, 3)):
        bad_rank = (p, q) == (0, 0)
        bad_degree = (p == 0 and a != 0) or (q == 0 and b != 0)
        for main in (False, True):
            bad_main = main and (p == 0 or q == 0)
            allowed = set()
            if bad_rank or bad_main:
                allowed.add(RankError)
            if bad_degree and not bad_rank:
                allowed.add(DegreeError)
            if allowed:
                with pytest.raises((RankError, DegreeError)) as info:
                    validate_type(p, q, a, b, main)
                assert type(info.value) in allowed
            else:
                assert validate_type(p, q, a, b, main).as_tuple() == (p, q, a, b)


def test_interval_contains_examples():
    half_open = ExtendedInterval.closed_open(0, F(2, 7))
    assert interval_contains(half_open, F(1, 6))
    assert not interval_contains(half_open, F(2, 7))
    assert interval_contains(ExtendedInterval.real_line(), -1000)


def test_infinite_endpoints_are_open():
    i = ExtendedInterval(None, 3, True, True)
    assert not i.lower_closed and i.upper_closed
    assert str(i) == "(-inf, 3]"


def test_reversed_interval_is_empty_but_kept():
    i = ExtendedInterval.closed_open(0, -1)
    assert i.is_empty()
    assert (i.lower, i.upper) == (0, -1)
    assert str(i) == "[0, -1)"
    assert i.normalized() == ExtendedInterval.empty()


def test_degenerate_intervals():
    assert not ExtendedInterval.closed(1, 1).is_empty()
    assert ExtendedInterval.closed_open(1, 1).is_empty()


def test_germs():
    i = ExtendedInterval.closed_open(0, F(2, 7))
    assert i.contains_right_of(0) and not i.contains_left_of(0)
    assert i.contains_left_of(F(2, 7)) and not i.contains_right_of(F(2, 7))
    assert i.contains_left_of(F(1, 6)) and i.contains_right_of(F(1, 6))


def test_as_rational_rejects_inexact():
    assert as_rational("3/6") == F(1, 2)
    assert as_rational(" -4 ") == -4
    for bad in ("0.5", "1e3"):
        with pytest.raises(ValueError):
            as_rational(bad)
    for bad in (0.5, True):
        with pytest.raises(TypeError):
            as_rational(bad)


def test_format_rational():
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(-4, 2)) == "-2"
    assert format_rational(F(0)) == "0"


def test_curve_canonical_consistency():
    assert CurveData.with_canonical_twist(3) == CurveData(3, 4, True)
    with pytest.raises(CurveError):
        CurveData(2, 3, True)
    with pytest.raises(CurveError):
        CurveData(-1, 0)


def test_type_arithmetic():
    t1, t2 = HiggsType(1, 1, 0, 1), HiggsType(2, 1, 0, 1)
    assert t1 + t2 == HiggsType(3, 2, 0, 2)
    assert HiggsType(3, 2, 0, 2) - t1 == t2
    with pytest.raises(DegreeError):
        HiggsType(3, 2, 0, 2) - HiggsType(1, 2, 0, 0)


def test_merge_intervals():
    merged = merge_intervals(
        [
            ExtendedInterval.closed_open(0, 1),
            ExtendedInterval.open(-5, 1),
            ExtendedInterval.closed(3, 4),
            ExtendedInterval.closed_open(4, 6),
            ExtendedInterval.closed_open(0, -1),
        ]
    )
    assert merged == [ExtendedInterval.open(-5, 1), ExtendedInterval.closed_open(3, 6)]


def test_merge_open_touching_stays_apart():
    a, b = ExtendedInterval.open(0, 1), ExtendedInterval.open(1, 2)
    assert merge_intervals([b, a]) == [a, b]


@given(fractions, fractions)
def test_rational_round_trip(x, y):
    assert (x + y) - y == x
    assert F(x.numerator, x.denominator) == x
    assert as_rational(format_rational(x)) == x


@st.composite
def intervals(draw):
    lo = draw(st.one_of(st.none(), fractions))
    hi = draw(st.one_of(st.none(), fractions))
    if lo is not None and hi is not None and lo > hi:
        lo, hi = hi, lo
    return ExtendedInterval(lo, hi, draw(st.booleans()), draw(st.booleans()))


@given(intervals(), intervals(), intervals(), fractions)
def test_intersection_commutative_associative(a, b, c, x):
    assert a.intersect(b).normalized() == b.intersect(a).normalized()
    assert a.intersect(b).intersect(c).normalized() == a.intersect(b.intersect(c)).normalized()
    assert a.intersect(b).contains(x) == (a.contains(x) and b.contains(x))


@given(intervals(), fractions)
def test_negation_reflects_membership(a, x):
    assert a.negated().contains(-x) == a.contains(x)
    assert a.negated().negated() == a
