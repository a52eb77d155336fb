"""Time the oracle's integer kernels under both backends.

    python benchmarks/bench_kernels.py [--ranks 4] [--degrees 5] [--repeat 3]

Runs the criticality scan and the decomposition brute force over a box of
types at every wall in the admissible range (or [-5, 5] when p = q), checks
that both backends return identical results, and prints best-of-N times.
"""

import argparse
import time

from upq_walls import _kernels, oracle
from upq_walls.core_types import CurveData, ExtendedInterval, HiggsType
from upq_walls.parameter_space import alpha_range, enumerate_walls


def workload(rmax, dmax, curve):
    jobs = []
    for p in range(1, rmax + 1):
        for q in range(1, rmax + 1):
            for a in range(-dmax, dmax + 1):
                for b in range(-dmax, dmax + 1):
                    t = HiggsType(p, q, a, b)
                    rng = alpha_range(t, curve)
                    window = rng.range if rng.finite else ExtendedInterval.closed(-5, 5)
                    walls = [w.alpha_c for w in enumerate_walls(t, curve, window, refine=False)]
                    jobs.append((t, window, walls))
    return jobs


def run_scan(jobs, backend):
    return [oracle.walls_by_scan(t, window, backend=backend) for t, window, _ in jobs]


def run_brute(jobs, curve, backend):
    return [
        [oracle.decompositions_bruteforce(t, curve, alpha, backend=backend) for alpha in walls]
        for t, _, walls in jobs
    ]


def best_of(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ranks", type=int, default=3)
    parser.add_argument("--degrees", type=int, default=3)
    parser.add_argument("--genus", type=int, default=2)
    parser.add_argument("--degL", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    curve = CurveData(args.genus, args.degL)
    jobs = workload(args.ranks, args.degrees, curve)
    n_walls = sum(len(w) for _, _, w in jobs)
    print(f"{len(jobs)} types, {n_walls} walls")

    backends = _kernels.available_backends()
    if "numba" in backends:
        # compile outside the timed region
        run_brute(jobs[:1], curve, "numba")
        run_scan(jobs[:1], "numba")

    results = {}
    for name in backends:
        t_scan, scan = best_of(lambda: run_scan(jobs, name), args.repeat)
        t_brute, brute = best_of(lambda: run_brute(jobs, curve, name), args.repeat)
        results[name] = (scan, brute)
        print(f"{name:>6}: scan {t_scan:8.3f} s   brute force {t_brute:8.3f} s")

    if len(results) == 2:
        same = results["numba"] == results["numpy"]
        print("backends agree" if same else "BACKENDS DISAGREE")
        if not same:
            raise SystemExit(2)


if __name__ == "__main__":
    main()
