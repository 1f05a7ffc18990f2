"""Compiled Gaussian elimination: bit-packed over F_2, row-sparse over F_p."""
from __future__ import annotations

import numba as nb
import numpy as np


@nb.njit(cache=True)
def _rref_packed(W, ncols):
    m, nw = W.shape
    pivots = np.empty(min(m, ncols), np.int64)
    r = 0
    for c in range(ncols):
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        piv = -1
        for i in range(r, m):
            if W[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(nw):
                t = W[r, k]
                W[r, k] = W[piv, k]
                W[piv, k] = t
        for i in range(m):
            if i != r and (W[i, w] & bit):
                for k in range(w, nw):
                    W[i, k] ^= W[r, k]
        pivots[r] = c
        r += 1
        if r == m:
            break
    return r, pivots[:r]


@nb.njit(cache=True)
def _pack(A):
    m, n = A.shape
    nw = max(1, (n + 63) // 64)
    W = np.zeros((m, nw), np.uint64)
    for i in range(m):
        for j in range(n):
            if A[i, j] & 1:
                W[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    return W


@nb.njit(cache=True)
def _unpack(W, n):
    m = W.shape[0]
    A = np.zeros((m, n), np.int64)
    for i in range(m):
        for j in range(n):
            if (W[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                A[i, j] = 1
    return A


def pack(A):
    return _pack(np.ascontiguousarray(A, dtype=np.int64))


def unpack(W, n):
    return _unpack(W, n)


def rref(A):
    """``(R, pivots)`` for a 0/1 matrix; ``R`` holds the nonzero rows."""
    m, n = A.shape
    W = pack(A)
    r, piv = _rref_packed(W, n)
    return unpack(W[:r], n), [int(c) for c in piv]


@nb.njit(cache=True)
def _rref_modp(A, p):
    # Rows are reduced lazily: an update adds at most (p-1)^2 in absolute
    # value and a row sees at most min(m, n) updates, so int64 never
    # overflows for the primes allowed by ``rref_modp``.
    m, n = A.shape
    pivots = np.empty(min(m, n), np.int64)
    nz = np.empty(n, np.int64)
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            A[i, c] %= p
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, n):
                t = A[r, k]
                A[r, k] = A[piv, k]
                A[piv, k] = t
        a = A[r, c]
        inv = 1
        e = p - 2
        b = a
        while e:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        cnt = 0
        for k in range(c, n):
            v = A[r, k] % p
            if v != 0:
                A[r, k] = v * inv % p
                nz[cnt] = k
                cnt += 1
            else:
                A[r, k] = 0
        for i in range(m):
            if i == r:
                continue
            f = A[i, c] % p
            if f != 0:
                for j in range(cnt):
                    k = nz[j]
                    A[i, k] -= f * A[r, k]
            A[i, c] = 0
        pivots[r] = c
        r += 1
        if r == m:
            break
    return r, pivots[:r]


def rref_modp(A, p):
    A = np.array(A, dtype=np.int64) % p
    if min(A.shape) * (p - 1) ** 2 >= 2**62:
        raise OverflowError("prime too large for lazy reduction")
    r, piv = _rref_modp(A, p)
    return A[:r] % p, [int(c) for c in piv]
