"""Exact prefix-rank kernels.

Both entry points take a matrix and return, for every column index ``c``,
the rank of the submatrix made of columns ``0..c``. The oracle orders its
monomial columns so that every Hilbert-function value it needs is one of
these prefix ranks.

Two independent routes:

* :func:`prefix_ranks_bareiss` -- fraction-free elimination over the
  integers (Python ints, so exact over the rationals once denominators are
  cleared). Reference path.
* :func:`prefix_ranks_modp` -- Gaussian elimination over ``F_p`` for a prime
  ``2**60 < p < 2**63``, stored in ``uint64``. Products are formed with a
  double-and-add loop since a 64x64-bit product does not fit in a word.
  Backed by a numba kernel, or by a vectorised numpy fallback when numba is
  disabled (see :mod:`bihilbert._accel`).
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

MAX_PRIME = 2**63


def prefix_ranks_bareiss(rows):
    """Prefix ranks of an integer matrix given as a list of rows.

    Every remaining row is updated at each pivot step, including rows with a
    zero in the pivot column; that keeps each entry equal to a minor of the
    input so the division by the previous pivot is exact.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    out = []
    r = 0
    prev = 1
    for c in range(n):
        if r < m:
            piv = None
            for i in range(r, m):
                if mat[i][c]:
                    piv = i
                    break
            if piv is not None:
                if piv != r:
                    mat[r], mat[piv] = mat[piv], mat[r]
                row_r = mat[r]
                pv = row_r[c]
                for k in range(r + 1, m):
                    row_k = mat[k]
                    f = row_k[c]
                    for cc in range(c + 1, n):
                        row_k[cc] = (pv * row_k[cc] - f * row_r[cc]) // prev
                    row_k[c] = 0
                prev = pv
                r += 1
        out.append(r)
    return out


# -- F_p, numba ---------------------------------------------------------------


@njit(cache=True)
def _mulmod(a, b, p):
    res = np.uint64(0)
    one = np.uint64(1)
    while b:
        if b & one:
            res = res + a
            if res >= p:
                res = res - p
        a = a + a
        if a >= p:
            a = a - p
        b = b >> one
    return res


@njit(cache=True)
def _powmod(a, e, p):
    res = np.uint64(1)
    one = np.uint64(1)
    while e:
        if e & one:
            res = _mulmod(res, a, p)
        a = _mulmod(a, a, p)
        e = e >> one
    return res


@njit(cache=True)
def _prefix_ranks_modp_jit(mat, p):
    m, n = mat.shape
    out = np.zeros(n, np.int64)
    r = 0
    two = np.uint64(2)
    for c in range(n):
        if r < m:
            piv = -1
            for i in range(r, m):
                if mat[i, c] != 0:
                    piv = i
                    break
            if piv >= 0:
                if piv != r:
                    for cc in range(c, n):
                        t = mat[r, cc]
                        mat[r, cc] = mat[piv, cc]
                        mat[piv, cc] = t
                inv = _powmod(mat[r, c], p - two, p)
                for cc in range(c, n):
                    mat[r, cc] = _mulmod(mat[r, cc], inv, p)
                for k in range(r + 1, m):
                    f = mat[k, c]
                    if f != 0:
                        for cc in range(c, n):
                            y = _mulmod(f, mat[r, cc], p)
                            x = mat[k, cc]
                            if x >= y:
                                mat[k, cc] = x - y
                            else:
                                mat[k, cc] = x + (p - y)
                r += 1
        out[c] = r
    return out


def _prefix_ranks_modp_numba(mat, p):
    work = np.array(mat, dtype=np.uint64, copy=True)
    return _prefix_ranks_modp_jit(work, np.uint64(p))


# -- F_p, numpy fallback ------------------------------------------------------


def _addmod(x, y, p):
    s = x + y
    return np.where(s >= p, s - p, s)


def _submod(x, y, p):
    return np.where(x >= y, x - y, x + (p - y))


def _mulmod_np(a, b, p):
    """Elementwise ``a*b mod p`` for broadcastable uint64 arrays below ``p``."""
    a, b = np.broadcast_arrays(np.asarray(a, np.uint64), np.asarray(b, np.uint64))
    a = a.copy()
    b = b.copy()
    res = np.zeros(a.shape, np.uint64)
    one = np.uint64(1)
    while b.any():
        odd = (b & one).astype(bool)
        res = np.where(odd, _addmod(res, a, p), res)
        a = _addmod(a, a, p)
        b >>= one
    return res


def _prefix_ranks_modp_numpy(mat, p):
    mat = np.array(mat, dtype=np.uint64, copy=True)
    p = np.uint64(p)
    m, n = mat.shape
    out = np.zeros(n, np.int64)
    r = 0
    for c in range(n):
        if r < m:
            nz = np.flatnonzero(mat[r:, c])
            if nz.size:
                piv = r + int(nz[0])
                if piv != r:
                    mat[[r, piv], c:] = mat[[piv, r], c:]
                inv = pow(int(mat[r, c]), int(p) - 2, int(p))
                mat[r, c:] = _mulmod_np(mat[r, c:], np.uint64(inv), p)
                below = r + 1 + np.flatnonzero(mat[r + 1 :, c])
                if below.size:
                    prod = _mulmod_np(mat[below, c : c + 1], mat[r : r + 1, c:], p)
                    mat[below, c:] = _submod(mat[below, c:], prod, p)
                r += 1
        out[c] = r
    return out


def prefix_ranks_modp(mat, p):
    """Prefix ranks of ``mat`` (entries already reduced into ``[0, p)``) over F_p."""
    if not 2 < p < MAX_PRIME:
        raise ValueError(f"prime must lie below 2**63, got {p}")
    mat = np.asarray(mat, dtype=np.uint64)
    if mat.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return np.zeros(mat.shape[1], np.int64)
    if USE_NUMBA:
        return _prefix_ranks_modp_numba(mat, p)
    return _prefix_ranks_modp_numpy(mat, p)
