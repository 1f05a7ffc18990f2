"""Exact linear algebra over prime fields.

Dense matrices are numpy int64 arrays with entries reduced into ``[0, p)``;
row reduction runs in compiled loops (bit-packed for ``p = 2``).  Very tall
sparse matrices (bar complexes) get their kernels from sampled rows plus an
exact verification pass.
"""
from __future__ import annotations

import numpy as np

from . import _elim


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def reduce(A, p):
    return np.asarray(A, dtype=np.int64) % p


def matmul(A, B, p):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    # int64 overflow guard: entries < p, so products sum to < n*p^2
    if A.shape[1] * (p - 1) ** 2 < 2**62:
        return (A % p) @ (B % p) % p
    raise OverflowError("prime too large for int64 products")


def rank(A, p):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def rref(A, p):
    """Reduced row echelon form: returns (nonzero rows, pivot columns)."""
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    if A.size == 0:
        return zeros(0, n), []
    if p == 2:
        return _elim.rref(A % 2)
    return _elim.rref_modp(A, p)


def kernel(A, p):
    """Kernel basis together with its free coordinates.

    Returns ``(K, free)``: the columns of ``K`` span ``{x : A x = 0}`` and
    ``K[free, :]`` is the identity, so a kernel vector ``v`` has
    coordinates ``v[free]`` in this basis.
    """
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    if n == 0:
        return zeros(0, 0), []
    if m == 0:
        return identity(n), list(range(n))
    R, pivots = rref(A, p)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    K = zeros(n, len(free))
    K[free, np.arange(len(free))] = 1
    if pivots:
        K[pivots, :] = (-R[:, free]) % p
    return K, free


def nullspace(A, p):
    """Columns spanning ``{x : A x = 0}`` (shape ``ncols x nullity``)."""
    return kernel(A, p)[0]


def column_space(A, p):
    """Columns forming a basis of the column space of ``A``."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[1] == 0:
        return zeros(A.shape[0], 0)
    R, _ = rref(A.T, p)
    return R.T.copy()


def solve(A, b, p):
    """One solution of ``A x = b``; raises ValueError if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    m, n = A.shape
    aug = np.hstack([A % p, B % p])
    R, pivots = rref(aug, p)
    if any(c >= n for c in pivots):
        raise ValueError("inconsistent linear system")
    X = zeros(n, B.shape[1])
    for i, c in enumerate(pivots):
        X[c] = R[i, n:]
    return X[:, 0] if vec else X


def inverse(A, p):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A % p, identity(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return R[:, n:].copy()


def quotient_coordinates(sub, big, p):
    """Complement data for the quotient ``span(big) / span(sub)``.

    ``sub`` and ``big`` hold column vectors with span(sub) inside span(big).
    Returns ``(reps, coords)``: ``reps`` are columns of ``big`` completing a
    basis of span(sub), and ``coords(v)`` maps vectors of span(big) (one
    column each) to coordinates in the quotient basis given by ``reps``.
    """
    sub = np.asarray(sub, dtype=np.int64)
    big = np.asarray(big, dtype=np.int64)
    n = big.shape[0]
    sub_basis = column_space(sub, p) if sub.size else zeros(n, 0)
    s = sub_basis.shape[1]
    M = np.hstack([sub_basis, big])
    _, pivots = rref(M, p) if M.size else (None, [])
    rep_cols = [c - s for c in pivots if c >= s]
    reps = big[:, rep_cols] if rep_cols else zeros(n, 0)
    basis = np.hstack([sub_basis, reps])

    def coords(v):
        v = np.asarray(v, dtype=np.int64)
        if basis.shape[1] == 0:
            return zeros(0, v.shape[1]) if v.ndim == 2 else zeros(0, 1)[:, 0]
        return solve(basis, v, p)[s:]

    return reps, coords


def sparse_kernel(A, p, seed=0, dense_limit=4 * 10**6):
    """Exact kernel basis of a scipy sparse matrix over F_p.

    The kernel of a subset of rows always contains the true kernel; once
    ``A K = 0`` holds on every row the two agree.  Rows are sampled at
    random (seeded) and violated rows are added until that happens.
    """
    m, n = A.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    A = A.tocsr()
    if m * n <= dense_limit:
        return nullspace(A.toarray(), p)
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(m, size=min(m, n + 32), replace=False))
    while True:
        K = nullspace(A[chosen].toarray(), p)
        if K.shape[1] == 0:
            return K
        R = (A @ K) % p
        bad = np.flatnonzero(np.any(R != 0, axis=1))
        if bad.size == 0:
            return K
        extra = bad[: max(64, K.shape[1])]
        chosen = np.union1d(chosen, extra)
