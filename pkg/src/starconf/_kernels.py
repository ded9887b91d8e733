"""Compiled elimination kernels for prime fields with p < 2^31.

Entries are int64 residues in [0, p); every product of two residues fits
below 2^62, so ``a + b*c`` never overflows a signed 64-bit word.
"""

import numba
import numpy as np


@numba.njit(cache=True, inline="always")
def _reduce(x, p, pinv):
    # x in [0, 2^63); quotient estimate off by at most one either way
    q = np.int64(np.float64(x) * pinv)
    r = x - q * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


@numba.njit(cache=True)
def _inverse(a, p):
    e = p - 2
    result = 1
    base = a
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@numba.njit(cache=True)
def eliminate(A, p, reduced, stop_at_full):
    """In-place Gaussian elimination of ``A`` over F_p.

    Pivots are the first nonzero entry in column order.  With ``reduced`` the
    result is the reduced row echelon form, otherwise row echelon form with
    unit pivots.  Returns ``(pivot_columns, det_factor)`` where ``det_factor``
    is the signed product of the pivots met (the determinant when square and
    of full rank).
    """
    m, n = A.shape
    pinv = 1.0 / p
    pivots = np.empty(min(m, n), dtype=np.int64)
    det = np.int64(1)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
            det = (p - det) % p
        a = A[r, c]
        det = _reduce(det * a, p, pinv)
        inv = _inverse(a, p)
        for j in range(c, n):
            A[r, j] = _reduce(A[r, j] * inv, p, pinv)
        start = 0 if reduced else r + 1
        for i in range(start, m):
            if i == r:
                continue
            f = A[i, c]
            if f != 0:
                g = p - f
                for j in range(c, n):
                    A[i, j] = _reduce(A[i, j] + g * A[r, j], p, pinv)
        pivots[r] = c
        r += 1
        if stop_at_full and r == m:
            break
    return pivots[:r], det
