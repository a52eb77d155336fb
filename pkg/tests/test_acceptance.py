"""Acceptance criteria. Each test carries a ``criterion`` marker and the
terminal summary prints one PASS/FAIL line per criterion."""

import os
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction as F

import pytest

from helpers import curves_sweep, types_sweep
from upq_walls import oracle, report
from upq_walls.core_types import CurveData, ExtendedInterval, HiggsType
from upq_walls.errors import WindowRequired
from upq_walls.invariants import chi, genericity
from upq_walls.parameter_space import WallStatus, alpha_range, enumerate_walls
from upq_walls.theorem_engine import (
    Conclusion,
    ToledoCase,
    birationality_verdict,
    enumerate_decompositions,
    h2_vanishing_window,
    irreducibility_verdict,
    toledo_meaningful_range,
)

K2 = CurveData.with_canonical_twist(2)
FLAGSHIP = HiggsType(3, 2, 0, 2)
TOY = HiggsType(1, 1, 0, 0)
UNIT = ExtendedInterval.closed(0, 1)
TOY_WINDOW = ExtendedInterval.closed(-3, 3)


@pytest.fixture(scope="module")
def flagship():
    return report.analyze(FLAGSHIP, K2, UNIT)


# --------------------------------------------------------------- criterion 1

C1 = "flagship (3,2,0,2), g=2, L=K, window [0,1]"


@pytest.mark.criterion(1, C1)
def test_flagship_invariants(flagship):
    inv = flagship.invariants
    assert inv.mu == F(2, 5)
    assert inv.toledo == F(-12, 5)
    assert inv.dimension == 26
    assert flagship.range.range == ExtendedInterval.closed(-4, 16)
    assert flagship.thresholds.alpha_i[0] == F(2, 7)


@pytest.mark.criterion(1, C1)
def test_flagship_walls(flagship):
    walls = [w.wall for w in flagship.walls]
    assert [w.alpha_c for w in walls] == [F(1, 6), F(1)]
    spurious, real = walls
    assert spurious.status is WallStatus.NUMERICAL
    assert spurious.decompositions == ()
    assert real.status is WallStatus.DECOMPOSABLE
    pair = (HiggsType(1, 1, 0, 1), HiggsType(2, 1, 0, 1))
    match = [d for d in real.decompositions if (d.t1, d.t2) == pair]
    assert len(match) == 1
    assert match[0].chi_21 == chi(*pair, K2) == -5


@pytest.mark.criterion(1, C1)
@pytest.mark.parametrize("alpha", [F(1, 12), F(1, 100), F(1, 7), F(1, 5), F(11, 42), F(2, 7) - F(1, 1000)])
def test_flagship_irreducible_samples(alpha):
    v = irreducibility_verdict(FLAGSHIP, K2, alpha)
    assert v.applicable
    assert v.conclusion is Conclusion.IRREDUCIBLE


@pytest.mark.criterion(1, C1)
def test_flagship_irreducible_first_chamber(flagship):
    first = flagship.chambers[0]
    assert first.chamber.interval == ExtendedInterval.open(0, F(1, 6))
    assert first.irreducibility.conclusion is Conclusion.IRREDUCIBLE


@pytest.mark.criterion(1, C1)
def test_flagship_birational_at_spurious_wall(flagship):
    v = flagship.walls[0].birational
    assert v.applicable
    assert v.conclusion is Conclusion.FULL_MODULI_BIRATIONAL
    assert v.window_used == ExtendedInterval.closed_open(0, F(2, 7))
    assert any("Numerical" in n for n in v.notes)
    assert not genericity(FLAGSHIP).alpha_independent_possible


# --------------------------------------------------------------- criterion 2

C2 = "symmetric toy (1,1,0,0), window [-3,3]"


@pytest.mark.criterion(2, C2)
def test_toy_walls():
    walls = enumerate_walls(TOY, K2, TOY_WINDOW)
    assert [w.alpha_c for w in walls] == [-2, 0, 2]
    assert [w.alpha_c for w in walls if w.status is WallStatus.DECOMPOSABLE] == [0]


@pytest.mark.criterion(2, C2)
def test_toy_dimension():
    assert report.analyze(TOY, K2, TOY_WINDOW).invariants.dimension == 5


# --------------------------------------------------------------- criterion 3

C3 = "identity sweep p,q<=4, |a|,|b|<=5, g in {2,3}, three deg L each, < 60 s"


@pytest.mark.criterion(3, C3)
def test_identity_sweep():
    sweep = [(t, c) for c in curves_sweep() for t in types_sweep()]
    assert len(sweep) == 6 * 16 * 121
    start = time.perf_counter()
    result = oracle.verify_identities(sweep)
    elapsed = time.perf_counter() - start
    assert result.mismatches == ()
    assert result.passed
    assert result.checked > len(sweep)
    assert elapsed < 60, f"identity sweep took {elapsed:.1f} s"


# --------------------------------------------------------------- criterion 4

C4 = "engine walls and decompositions equal the brute-force oracle on the sweep"
P_EQ_Q_WINDOW = ExtendedInterval.closed(-5, 5)


def _equivalence(job):
    c, types = job
    bad = []
    walls_seen = 0
    for t in types:
        rng = alpha_range(t, c)
        window = rng.range if rng.finite else P_EQ_Q_WINDOW
        walls = enumerate_walls(t, c, window)
        walls_seen += len(walls)
        if [w.alpha_c for w in walls] != oracle.walls_by_scan(t, window):
            bad.append(("walls", t, c))
        for w in walls:
            engine = sorted(oracle.decomposition_key(d) for d in w.decompositions)
            brute = [d.key() for d in oracle.decompositions_bruteforce(t, c, w.alpha_c)]
            if engine != brute:
                bad.append(("decompositions", t, c, w.alpha_c))
    return walls_seen, bad


@pytest.mark.slow
@pytest.mark.criterion(4, C4)
def test_oracle_equivalence():
    types = types_sweep()
    jobs = [(c, types[i::4]) for c in curves_sweep() for i in range(4)]
    workers = min(len(jobs), os.cpu_count() or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_equivalence, jobs))
    else:
        results = [_equivalence(j) for j in jobs]
    bad = [b for _, bs in results for b in bs]
    assert sum(n for n, _ in results) > 100_000
    assert bad == []


# --------------------------------------------------------------- criterion 5

C5 = "negative controls (2,1,0,-1) and (2,2,0,0)"
NEG = HiggsType(2, 1, 0, -1)


@pytest.mark.criterion(5, C5)
def test_negative_birationality_window_empty():
    walls = [w.alpha_c for w in enumerate_walls(NEG, K2) if w.alpha_c >= 0]
    assert walls
    for alpha in walls:
        v = birationality_verdict(NEG, K2, alpha)
        assert not v.applicable
        assert v.window_used == ExtendedInterval.closed_open(0, -1)
        assert v.window_used.is_empty()


@pytest.mark.criterion(5, C5)
def test_negative_toledo_neither():
    assert toledo_meaningful_range(NEG, K2).case is ToledoCase.NEITHER


@pytest.mark.criterion(5, C5)
def test_negative_equal_ranks():
    t = HiggsType(2, 2, 0, 0)
    assert genericity(t).alpha_independent_possible
    with pytest.raises(WindowRequired):
        report.analyze(t, K2)
    proc = subprocess.run(
        [sys.executable, "-m", "upq_walls.cli", "analyze", "--type", "2,2,0,0", "--genus", "2", "--canonical"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert "WindowRequired" in proc.stderr


# --------------------------------------------------------------- criterion 6

C6 = "H2 vanishing windows"


@pytest.mark.criterion(6, C6)
def test_h2_flagship():
    w = h2_vanishing_window(FLAGSHIP, CurveData(2, 2))
    assert w.intervals == (ExtendedInterval.closed_open(0, F(2, 7)),)
    assert w.stable_only


@pytest.mark.criterion(6, C6)
def test_h2_q1_clause():
    w = h2_vanishing_window(HiggsType(2, 1, 0, 1), CurveData(2, 3))
    assert w.intervals == (ExtendedInterval.open(-5, 1),)
    assert not w.stable_only


# --------------------------------------------------------------- criterion 7

C7 = "JSON round trip and byte-determinism for every report above"

REPORT_INPUTS = [
    ("flagship", FLAGSHIP, K2, UNIT),
    ("toy", TOY, K2, TOY_WINDOW),
    ("negative", NEG, K2, None),
    ("equal ranks", HiggsType(2, 2, 0, 0), K2, ExtendedInterval.closed(-3, 3)),
    ("h2 flagship", FLAGSHIP, CurveData(2, 2), None),
    ("h2 q=1", HiggsType(2, 1, 0, 1), CurveData(2, 3), None),
]


@pytest.mark.criterion(7, C7)
@pytest.mark.parametrize("name,t,c,window", REPORT_INPUTS, ids=[r[0] for r in REPORT_INPUTS])
def test_round_trip(name, t, c, window):
    r = report.analyze(t, c, window, self_check=True)
    text = report.to_json(r)
    back = report.from_json(text)
    assert back == r
    assert report.to_json(back) == text
    for fmt in ("text", "json", "svg"):
        assert report.render(r, fmt) == report.render(report.analyze(t, c, window, self_check=True), fmt)


def _cli_bytes(args, seed, threads="1"):
    env = dict(os.environ, PYTHONHASHSEED=str(seed), UPQ_WALLS_THREADS=threads)
    proc = subprocess.run([sys.executable, "-m", "upq_walls.cli", *args], capture_output=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


@pytest.mark.criterion(7, C7)
@pytest.mark.parametrize("fmt", ["json", "text", "svg"])
def test_cli_bytes_stable_across_hash_seeds(fmt):
    args = ["analyze", "--type", "3,2,0,2", "--genus", "2", "--canonical", "--window", "0,1", "--format", fmt]
    assert _cli_bytes(args, 1) == _cli_bytes(args, 2)


@pytest.mark.criterion(7, C7)
def test_sweep_bytes_stable_across_thread_counts():
    args = ["sweep", "--ranks", "2", "--degrees", "1", "--genus", "2", "--canonical", "--window", "-3,3"]
    one = _cli_bytes(args, 3, threads="1")
    two = _cli_bytes(args, 4, threads="2")
    assert one == two
    assert len(one.splitlines()) == 4 * 9
