"""Shared sweeps for the test suite."""

from upq_walls.core_types import CurveData, HiggsType


def curves_sweep():
    return [CurveData(g, dl, dl == 2 * g - 2) for g in (2, 3) for dl in (2 * g - 2, 2 * g - 1, 2 * g)]


def types_sweep(rmax=4, dmax=5):
    return [
        HiggsType(p, q, a, b)
        for p in range(1, rmax + 1)
        for q in range(1, rmax + 1)
        for a in range(-dmax, dmax + 1)
        for b in range(-dmax, dmax + 1)
    ]
