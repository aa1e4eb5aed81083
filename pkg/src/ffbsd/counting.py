"""Quadratic-character point-counting kernels.

Everything runs in the discrete-log domain of a tabled extension field: an
element is its log (0..M-1) with M = q^n - 1 standing in for zero, addition
goes through the Zech table, and the quadratic character of g^k is the parity
of k.  The batched kernel computes, for many coefficient pairs (a, b) at
once,

    s(a, b) = sum over c in F_{q^n} of chi(c^3 + a*c + b),

so the affine point count of y^2 = x^3 + a x + b is q^n + s.  A numba kernel
parallelized over the pairs carries production loads; a numpy fallback keeps
the package usable (slowly) without a working JIT and doubles as a
cross-check in the tests.
"""

from __future__ import annotations

import os

import numpy as np

from .ff import FqExt

_want_numba = os.environ.get("FFBSD_NO_NUMBA") != "1"
if _want_numba:
    try:
        # skip the TBB probe (warns on images with older TBB); the portable
        # workqueue layer is deterministic and plenty for this workload
        os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")
        from numba import njit, prange, set_num_threads as _set_num_threads

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def set_threads(n: int):
    if HAVE_NUMBA and n >= 1:
        from numba import config

        _set_num_threads(min(n, config.NUMBA_NUM_THREADS))


if HAVE_NUMBA:

    @njit(inline="always")
    def _zadd(x, y, zech, M):
        # log-domain addition: g^x + g^y, M encodes zero
        if x == M:
            return y
        if y == M:
            return x
        d = x - y
        if d < 0:
            d += M
        z = zech[d]
        if z == M:
            return M
        t = y + z
        if t >= M:
            t -= M
        return t

    @njit(parallel=True, cache=False)
    def _char_sums_numba(la, lb, zech, M):
        nf = la.shape[0]
        out = np.empty(nf, dtype=np.int64)
        for i in prange(nf):
            ai = la[i]
            bi = lb[i]
            s = 0
            if bi != M:  # the c = 0 term is chi(b)
                s += 1 - ((bi & 1) << 1)
            c3 = 0  # log of c^3 for c = g^cl, maintained incrementally
            ac = ai  # log of a*c, likewise (unless a = 0)
            for _cl in range(M):
                if ai == M:
                    t = c3
                else:
                    t = _zadd(c3, ac, zech, M)
                    ac += 1
                    if ac == M:
                        ac = 0
                f = _zadd(t, bi, zech, M)
                if f != M:
                    s += 1 - ((f & 1) << 1)
                c3 += 3
                if c3 >= M:
                    c3 -= M
            out[i] = s
        return out


def _vzadd(x, y, zech, M):
    """Vectorized log-domain addition of index arrays."""
    x = np.asarray(x, dtype=np.int64)
    y = np.broadcast_to(np.asarray(y, dtype=np.int64), x.shape)
    out = np.where(x == M, y, x)
    both = (x != M) & (y != M)
    d = x[both] - y[both]
    d[d < 0] += M
    z = zech[d]
    t = y[both] + z
    t[t >= M] -= M
    t[z == M] = M
    out[both] = t
    return out


def _char_sums_numpy(la, lb, zech, M):
    nf = la.shape[0]
    out = np.zeros(nf, dtype=np.int64)
    cl = np.arange(M, dtype=np.int64)
    c3 = (3 * cl) % M
    if nf >= M // 4:
        # vectorize across fibers, loop over the element exponent
        base = np.where(lb == M, 0, 1 - 2 * (lb & 1))
        out += base
        for k in range(M):
            ac = np.where(la == M, M, (la + k) % M)
            t = _vzadd(np.full(nf, c3[k], dtype=np.int64), ac, zech, M)
            f = _vzadd(t, lb, zech, M)
            out += np.where(f == M, 0, 1 - 2 * (f & 1))
        return out
    for i in range(nf):
        ai, bi = la[i], lb[i]
        s = 0 if bi == M else 1 - 2 * (int(bi) & 1)
        ac = np.full(M, M, dtype=np.int64) if ai == M else (ai + cl) % M
        t = _vzadd(c3, ac, zech, M)
        f = _vzadd(t, np.full(M, bi, dtype=np.int64), zech, M)
        s += int(np.where(f == M, 0, 1 - 2 * (f & 1)).sum())
        out[i] = s
    return out


def char_sums(ext: FqExt, a_idx, b_idx) -> np.ndarray:
    """s[i] = sum_c chi(c^3 + a_i c + b_i) over all c in the field."""
    from .ff import COUNT_TABLE_LIMIT

    tab = ext.ensure_tables(COUNT_TABLE_LIMIT)
    la = tab["log"][np.asarray(a_idx, dtype=np.int64)]
    lb = tab["log"][np.asarray(b_idx, dtype=np.int64)]
    if HAVE_NUMBA:
        return _char_sums_numba(la, lb, tab["zech"], ext.M)
    return _char_sums_numpy(la, lb, tab["zech"], ext.M)


def char_sum(ext: FqExt, a: int, b: int) -> int:
    return int(
        char_sums(
            ext,
            np.array([a], dtype=np.int64),
            np.array([b], dtype=np.int64),
        )[0]
    )


def char_sum_slow(ext: FqExt, a: int, b: int) -> int:
    """Reference implementation by direct scalar arithmetic (test oracle)."""
    s = 0
    for c in ext.elements():
        f = ext.add(ext.add(ext.mul(ext.mul(c, c), c), ext.mul(a, c)), b)
        s += ext.char(f)
    return s
