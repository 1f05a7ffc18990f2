"""Cochain complexes over F_p and their cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import fp

BAR_COMPLEX = "BAR_COMPLEX"
RESOLUTION = "RESOLUTION"


class CochainComplex:
    """``C^0 -> C^1 -> ... -> C^N`` with ``diffs[n]`` of shape ``(dims[n+1], dims[n])``.

    Differentials may be dense numpy arrays or scipy sparse matrices.
    """

    def __init__(self, dims, diffs, p):
        if len(diffs) != len(dims) - 1:
            raise ValueError("need one differential per consecutive pair of degrees")
        for n, d in enumerate(diffs):
            if d.shape != (dims[n + 1], dims[n]):
                raise ValueError(f"d^{n} has shape {d.shape}, expected {(dims[n + 1], dims[n])}")
        self.dims = list(dims)
        self.diffs = list(diffs)
        self.p = p
        self._kernels = {}

    @property
    def top(self):
        return len(self.dims) - 1

    def check_dd(self):
        p = self.p
        for n in range(len(self.diffs) - 1):
            a, b = self.diffs[n], self.diffs[n + 1]
            if sp.issparse(a) or sp.issparse(b):
                prod = sp.csr_matrix(b) @ sp.csr_matrix(a)
                prod.data %= p
                prod.eliminate_zeros()
                if prod.nnz:
                    return False
            elif a.size and b.size and np.any(fp.matmul(b, a, p)):
                return False
        return True

    def cocycles(self, n):
        """Kernel basis of ``d^n`` (the whole of ``C^n`` in the top degree)."""
        K = self._kernels.get(n)
        if K is None:
            if n == self.top:
                K = fp.identity(self.dims[n])
            else:
                d = self.diffs[n]
                K = fp.sparse_kernel(d, self.p) if sp.issparse(d) else fp.nullspace(d, self.p)
            self._kernels[n] = K
        return K

    def rank(self, n):
        """Rank of ``d^n``."""
        if n < 0 or n >= len(self.diffs):
            return 0
        return self.dims[n] - self.cocycles(n).shape[1]

    def cohomology_dims(self, upto=None):
        """``dim H^n`` for ``n <= upto`` (default: ``top - 1``, the valid window)."""
        upto = self.top - 1 if upto is None else upto
        return [self.cocycles(n).shape[1] - self.rank(n - 1) for n in range(upto + 1)]

    def coboundaries(self, n):
        if n == 0:
            return fp.zeros(self.dims[0], 0)
        d = self.diffs[n - 1]
        D = d.toarray() if sp.issparse(d) else d
        return fp.column_space(D, self.p)

    def cohomology(self, n):
        """``Cohomology`` data for degree ``n``: representatives and coordinates."""
        Z = self.cocycles(n)
        B = self.coboundaries(n)
        reps, coords = fp.quotient_coordinates(B, Z, self.p)
        return Cohomology(n, reps, coords)


@dataclass
class Cohomology:
    degree: int
    reps: np.ndarray
    coords: object

    @property
    def dim(self):
        return self.reps.shape[1]


def induced_map(src_h, tgt_h, cochain_map, p):
    """Matrix of the map on cohomology from a cochain-level linear map.

    ``cochain_map`` takes a matrix of cocycle columns of the source complex
    and returns their images in the target complex.
    """
    if src_h.dim == 0 or tgt_h.dim == 0:
        return fp.zeros(tgt_h.dim, src_h.dim)
    images = fp.reduce(cochain_map(src_h.reps), p)
    return fp.reduce(tgt_h.coords(images), p)


@dataclass
class LimitsResult:
    """``dims[i] = dim lim^i`` for ``i`` in the valid window ``0..len(dims)-1``."""

    dims: list
    method: str
    complex: CochainComplex | None = field(default=None, repr=False)
    extra: dict = field(default_factory=dict)

    @property
    def window(self):
        return (0, len(self.dims) - 1)

    def as_dict(self):
        return {"dims": list(self.dims), "provenance": [self.method] * len(self.dims),
                "window": list(self.window)}
