"""Integer inner loops of the brute-force oracle.

Two interchangeable implementations: numba-compiled loops and a pure-numpy
path. ``UPQ_WALLS_BACKEND=numpy`` forces the latter; the default is numba
when it imports. Inputs whose intermediate products could overflow int64 go to the numpy
path with Python-int (object) arrays so results stay exact.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

BACKENDS = ("numba", "numpy")
# bound on any intermediate product that still leaves int64 headroom
INT64_SAFE = 2**62


def available_backends():
    return BACKENDS if numba is not None else ("numpy",)


def get_backend() -> str:
    name = os.environ.get("UPQ_WALLS_BACKEND", "").strip().lower()
    if name == "numpy" or numba is None:
        return "numpy"
    if name in ("", "numba"):
        return "numba"
    raise ValueError(f"UPQ_WALLS_BACKEND must be 'numba' or 'numpy', got {name!r}")


def _fits(estimate) -> bool:
    return abs(int(estimate)) < INT64_SAFE


# ---------------------------------------------------------------- critical scan
#
# alpha = k/den is critical for (p', q') iff
#     n'*S*den + k*(n'*p - p'*n)  ==  0  (mod n*den)
# where n = p+q, n' = p'+q' and S = a+b.


def _scan_numpy(k_lo, k_hi, den, pairs, p, n, total, dtype):
    if dtype is object:
        ks = np.array(range(k_lo, k_hi + 1), dtype=object)
    else:
        ks = np.arange(k_lo, k_hi + 1, dtype=np.int64)
    mask = np.zeros(ks.shape, dtype=bool)
    mod = n * den
    for ps, qs in pairs:
        ns = ps + qs
        base = ns * total * den
        coef = ns * p - ps * n
        mask |= (base + ks * coef) % mod == 0
    return [k_lo + int(i) for i in np.nonzero(mask)[0]]


if numba is not None:

    @numba.njit(cache=True)
    def _scan_numba(k_lo, k_hi, den, pairs, p, n, total):
        out = np.empty(k_hi - k_lo + 1, dtype=np.int64)
        count = 0
        mod = n * den
        for k in range(k_lo, k_hi + 1):
            for i in range(pairs.shape[0]):
                ns = pairs[i, 0] + pairs[i, 1]
                v = ns * total * den + k * (ns * p - pairs[i, 0] * n)
                if v % mod == 0:
                    out[count] = k
                    count += 1
                    break
        return out[:count]


def critical_numerators(k_lo, k_hi, den, pairs, p, n, total, backend=None):
    """Integers ``k`` in ``[k_lo, k_hi]`` such that ``k/den`` is critical."""
    if k_hi < k_lo or not pairs:
        return []
    backend = backend or get_backend()
    estimate = n * n * den * (abs(total) + 1) + 2 * n * n * max(abs(k_lo), abs(k_hi))
    if not _fits(estimate):
        return _scan_numpy(k_lo, k_hi, den, pairs, p, n, total, object)
    if backend == "numba":
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return _scan_numba(k_lo, k_hi, den, arr, p, n, total).tolist()
    return _scan_numpy(k_lo, k_hi, den, pairs, p, n, total, np.int64)


# ----------------------------------------------------------- decomposition loop
#
# alpha_c = N/D with D > 0. A part (p1, q1, a1, b1) with both ranks positive
# passes the Milnor-Wood filter iff, with T = 2(q1*a1 - p1*b1), n1 = p1+q1:
#   exists r in [0, min]:  T*D <= r*n1*(dL*D + N) - 2*p1*q1*N
#   exists r in [0, min]:  T*D >= r*n1*(N - dL*D) - 2*p1*q1*N
# and, when p1 != q1, the alpha-range filter iff
#   exists r:  N*(2*p1*q1 - r*n1) <= D*(r*dL*n1 - T)
#   exists r:  N*(r*n1 - 2*p1*q1) <= D*(r*dL*n1 + T)


def _part_ok_py(pp, qq, aa, bb, num, den, dl):
    if pp == 0 or qq == 0:
        return True
    nn = pp + qq
    m = min(pp, qq)
    tt = 2 * (qq * aa - pp * bb)
    up = any(tt * den <= r * nn * (dl * den + num) - 2 * pp * qq * num for r in range(m + 1))
    lo = any(tt * den >= r * nn * (num - dl * den) - 2 * pp * qq * num for r in range(m + 1))
    if not (up and lo):
        return False
    if pp != qq:
        hi_ok = any(num * (2 * pp * qq - r * nn) <= den * (r * dl * nn - tt) for r in range(m + 1))
        lo_ok = any(num * (r * nn - 2 * pp * qq) <= den * (r * dl * nn + tt) for r in range(m + 1))
        if not (hi_ok and lo_ok):
            return False
    return True


def _split_ok_py(p, q, a, b, p1, q1, a1, b1, num, den, dl):
    n = p + q
    n1 = p1 + q1
    p2, q2, a2, b2 = p - p1, q - q1, a - a1, b - b1
    if n1 == 0 or n1 == n:
        return False
    if (p1 == 0 and a1 != 0) or (q1 == 0 and b1 != 0):
        return False
    if (p2 == 0 and a2 != 0) or (q2 == 0 and b2 != 0):
        return False
    # canonical side: p1/n1 < p/n
    if not p1 * n < p * n1:
        return False
    # (a1+b1 + alpha*p1)/n1 == (a+b + alpha*p)/n
    if n * ((a1 + b1) * den + num * p1) != n1 * ((a + b) * den + num * p):
        return False
    return _part_ok_py(p1, q1, a1, b1, num, den, dl) and _part_ok_py(p2, q2, a2, b2, num, den, dl)


def _slope_degree(p, q, a, b, p1, q1, num, den):
    """The only ``a1 + b1`` with equal slopes, or ``None`` if not integral."""
    n, n1 = p + q, p1 + q1
    s_num = n1 * ((a + b) * den + num * p) - n * num * p1
    if s_num % (n * den):
        return None
    return s_num // (n * den)


def _bruteforce_numpy(p, q, a, b, num, den, dl, radius, dtype):
    """Vectorised over ``a1`` for each rank pair; ``b1`` is pinned by the
    slope equation, which the quadruple loop would test anyway."""
    n = p + q
    A1 = np.arange(-radius, radius + 1, dtype=np.int64).astype(dtype)
    hits = []
    for p1 in range(p + 1):
        for q1 in range(q + 1):
            n1 = p1 + q1
            if n1 == 0 or n1 == n or not p1 * n < p * n1:
                continue
            s1 = _slope_degree(p, q, a, b, p1, q1, num, den)
            if s1 is None:
                continue
            p2, q2 = p - p1, q - q1
            B1 = s1 - A1
            A2, B2 = a - A1, b - B1
            ok = (B1 >= -radius) & (B1 <= radius)
            ok &= n * ((A1 + B1) * den + num * p1) == n1 * ((a + b) * den + num * p)
            if p1 == 0:
                ok &= A1 == 0
            if q1 == 0:
                ok &= B1 == 0
            if p2 == 0:
                ok &= A2 == 0
            if q2 == 0:
                ok &= B2 == 0
            for pp, qq, AA, BB in ((p1, q1, A1, B1), (p2, q2, A2, B2)):
                if pp == 0 or qq == 0 or not ok.any():
                    continue
                nn, m = pp + qq, min(pp, qq)
                tt = 2 * (qq * AA - pp * BB)
                up = np.zeros_like(ok)
                lo = np.zeros_like(ok)
                for r in range(m + 1):
                    up |= tt * den <= r * nn * (dl * den + num) - 2 * pp * qq * num
                    lo |= tt * den >= r * nn * (num - dl * den) - 2 * pp * qq * num
                ok &= up & lo
                if pp != qq:
                    hi_ok = np.zeros_like(ok)
                    lo_ok = np.zeros_like(ok)
                    for r in range(m + 1):
                        hi_ok |= num * (2 * pp * qq - r * nn) <= den * (r * dl * nn - tt)
                        lo_ok |= num * (r * nn - 2 * pp * qq) <= den * (r * dl * nn + tt)
                    ok &= hi_ok & lo_ok
            for i in np.nonzero(ok)[0]:
                hits.append((p1, q1, int(A1[i]), int(B1[i])))
    return hits


if numba is not None:

    @numba.njit(cache=True)
    def _part_ok_numba(pp, qq, aa, bb, num, den, dl):
        if pp == 0 or qq == 0:
            return True
        nn = pp + qq
        m = min(pp, qq)
        tt = 2 * (qq * aa - pp * bb)
        up = False
        lo = False
        for r in range(m + 1):
            if tt * den <= r * nn * (dl * den + num) - 2 * pp * qq * num:
                up = True
            if tt * den >= r * nn * (num - dl * den) - 2 * pp * qq * num:
                lo = True
        if not (up and lo):
            return False
        if pp != qq:
            hi_ok = False
            lo_ok = False
            for r in range(m + 1):
                if num * (2 * pp * qq - r * nn) <= den * (r * dl * nn - tt):
                    hi_ok = True
                if num * (r * nn - 2 * pp * qq) <= den * (r * dl * nn + tt):
                    lo_ok = True
            if not (hi_ok and lo_ok):
                return False
        return True

    @numba.njit(cache=True)
    def _bruteforce_numba(p, q, a, b, num, den, dl, radius):
        n = p + q
        cap = 64
        out = np.empty((cap, 4), dtype=np.int64)
        count = 0
        for p1 in range(p + 1):
            for q1 in range(q + 1):
                n1 = p1 + q1
                if n1 == 0 or n1 == n or not p1 * n < p * n1:
                    continue
                p2 = p - p1
                q2 = q - q1
                s_num = n1 * ((a + b) * den + num * p) - n * num * p1
                if s_num % (n * den) != 0:
                    continue
                s1 = s_num // (n * den)
                for a1 in range(-radius, radius + 1):
                    # the b1 loop collapses onto the value fixed by the slope equation
                    b1 = s1 - a1
                    if b1 < -radius or b1 > radius:
                        continue
                    a2 = a - a1
                    b2 = b - b1
                    if (p1 == 0 and a1 != 0) or (q1 == 0 and b1 != 0):
                        continue
                    if (p2 == 0 and a2 != 0) or (q2 == 0 and b2 != 0):
                        continue
                    if n * ((a1 + b1) * den + num * p1) != n1 * ((a + b) * den + num * p):
                        continue
                    if not _part_ok_numba(p1, q1, a1, b1, num, den, dl):
                        continue
                    if not _part_ok_numba(p2, q2, a2, b2, num, den, dl):
                        continue
                    if count == cap:
                        grown = np.empty((cap * 2, 4), dtype=np.int64)
                        grown[:cap] = out
                        out = grown
                        cap *= 2
                    out[count, 0] = p1
                    out[count, 1] = q1
                    out[count, 2] = a1
                    out[count, 3] = b1
                    count += 1
        return out[:count]


def bruteforce_splits(p, q, a, b, num, den, dl, radius, backend=None):
    """All ``(p1, q1, a1, b1)`` with ``|a1|, |b1| <= radius`` giving a valid
    canonical equal-slope split at ``alpha = num/den`` that passes both
    filters. Returned in lexicographic order."""
    backend = backend or get_backend()
    n = p + q
    estimate = 4 * n * n * (radius + abs(a) + abs(b) + 1) * (abs(num) + den * (abs(dl) + 1))
    if not _fits(estimate):
        hits = _bruteforce_numpy(p, q, a, b, num, den, dl, radius, object)
    elif backend == "numba":
        hits = [tuple(int(x) for x in row) for row in _bruteforce_numba(p, q, a, b, num, den, dl, radius)]
    else:
        hits = _bruteforce_numpy(p, q, a, b, num, den, dl, radius, np.int64)
    return sorted(hits)


def split_ok(p, q, a, b, p1, q1, a1, b1, num, den, dl) -> bool:
    """Scalar reference for a single candidate (used in tests)."""
    return _split_ok_py(p, q, a, b, p1, q1, a1, b1, num, den, dl)
