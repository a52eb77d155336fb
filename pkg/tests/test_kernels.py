import itertools

import pytest

from upq_walls import _kernels, oracle
from upq_walls.core_types import CurveData, ExtendedInterval, HiggsType


def test_backend_env(monkeypatch):
    monkeypatch.setenv("UPQ_WALLS_BACKEND", "numpy")
    assert _kernels.get_backend() == "numpy"
    monkeypatch.setenv("UPQ_WALLS_BACKEND", "fortran")
    with pytest.raises(ValueError):
        _kernels.get_backend()
    monkeypatch.delenv("UPQ_WALLS_BACKEND")
    assert _kernels.get_backend() in _kernels.available_backends()


@pytest.mark.skipif("numba" not in _kernels.available_backends(), reason="numba not importable")
def test_backends_agree_on_scan_and_bruteforce():
    c = CurveData(2, 3)
    for p, q, a, b in itertools.product(range(1, 4), range(1, 4), range(-3, 4), range(-3, 4)):
        t = HiggsType(p, q, a, b)
        window = ExtendedInterval.closed(-4, 4)
        scans = [oracle.walls_by_scan(t, window, backend=be) for be in ("numba", "numpy")]
        assert scans[0] == scans[1]
        for alpha in scans[0]:
            rows = [
                oracle.decompositions_bruteforce(t, c, alpha, backend=be) for be in ("numba", "numpy")
            ]
            assert rows[0] == rows[1]


def test_bruteforce_rows_pass_scalar_reference():
    t, c = HiggsType(3, 2, 0, 2), CurveData(2, 2)
    rows = _kernels.bruteforce_splits(t.p, t.q, t.a, t.b, 1, 1, c.deg_l, 12)
    assert rows
    for p1, q1, a1, b1 in rows:
        assert _kernels.split_ok(t.p, t.q, t.a, t.b, p1, q1, a1, b1, 1, 1, c.deg_l)
    rejected = [
        (p1, q1, a1, b1)
        for p1 in range(4)
        for q1 in range(3)
        for a1 in range(-12, 13)
        for b1 in range(-12, 13)
        if _kernels.split_ok(t.p, t.q, t.a, t.b, p1, q1, a1, b1, 1, 1, c.deg_l)
    ]
    assert sorted(rejected) == rows


def _congruence(k_lo, k_hi, den, pairs, p, n, total):
    return [
        k
        for k in range(k_lo, k_hi + 1)
        if any(((ps + qs) * total * den + k * ((ps + qs) * p - ps * n)) % (n * den) == 0 for ps, qs in pairs)
    ]


def test_huge_values_take_exact_path():
    # products overflow int64 here, so the object-dtype path must be used
    pairs = [(1, 0), (0, 1), (2, 1)]
    den = 2**61 - 1
    k_lo = 5 * den
    args = (k_lo, k_lo + 40, den, pairs, 2, 3, 10**6)
    assert 3 * 3 * den * 10**6 > _kernels.INT64_SAFE
    for be in _kernels.available_backends():
        assert _kernels.critical_numerators(*args, backend=be) == _congruence(*args)


def test_huge_type_scan_matches_criticality():
    big = 10**12
    t = HiggsType(2, 1, big, -big + 1)
    window = ExtendedInterval.closed(-3, 3)
    scans = [oracle.walls_by_scan(t, window, backend=be) for be in _kernels.available_backends()]
    assert all(s == scans[0] for s in scans)
    assert scans[0] and all(oracle.is_critical(t, a) for a in scans[0])
