"""Higher limits through the bar cochain complex.

``C^n`` is the product over composable chains ``c_0 -> ... -> c_n`` of
``Phi(c_0)``.  For a chain ``(f_1, ..., f_{n+1})`` with ``f_1 = chi``

    (d xi)(chain) = Phi(chi) xi(f_2..f_{n+1})
                    + sum_{i=1}^{n} (-1)^i xi(.. f_{i+1} f_i ..)
                    + (-1)^{n+1} xi(f_1..f_n).

The normalized complex keeps identity-free chains only; a face that
composes to an identity contributes zero.  Only chains whose first object
carries a nonzero value are materialized.
"""
from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sp

from . import fp
from .complexes import BAR_COMPLEX, RESOLUTION, CochainComplex, LimitsResult
from .orbitcat import CHAIN_CAP, ChainCapExceeded

DEFAULT_N = 4
# largest bar cochain space the "auto" method builds before switching route
BAR_AUTO_LIMIT = int(os.environ.get("HIGHERLIM_BAR_LIMIT", 60000))


def supported_chains(C, Phi, n, nondegenerate=True, cap=None):
    """Chains of length ``n`` whose source object has ``Phi(c_0) != 0``."""
    cap = CHAIN_CAP if cap is None else cap
    if n == 0:
        return [(a,) for a in range(C.n_objects) if Phi.dims[a]]
    outs = [C.out_morphisms(a, nondegenerate) for a in range(C.n_objects)]
    result = []

    def extend(prefix, obj):
        if len(prefix) == n:
            result.append(tuple(prefix))
            if len(result) > cap:
                raise ChainCapExceeded(f"more than {cap} chains of length {n}")
            return
        for f in outs[obj]:
            prefix.append(f)
            extend(prefix, f.target)
            prefix.pop()

    for a in range(C.n_objects):
        if Phi.dims[a]:
            extend([], a)
    return result


def supported_chain_count(C, Phi, n, nondegenerate=True):
    """Dimension of ``C^n`` without enumerating chains."""
    m = C.n_objects
    targets = [[f.target for f in C.out_morphisms(a, nondegenerate)] for a in range(m)]
    counts = [1] * m
    for _ in range(n):
        counts = [sum(counts[t] for t in targets[a]) for a in range(m)]
    return sum(counts[a] * Phi.dims[a] for a in range(m))


def _source(chain):
    return chain[0] if isinstance(chain[0], int) else chain[0].source


class _Layout:
    """Coordinates of ``C^n``: a block of ``Phi(c_0)`` per chain."""

    def __init__(self, chains, Phi):
        self.chains = chains
        self.index = {}
        self.offsets = []
        tot = 0
        for i, ch in enumerate(chains):
            self.index[ch] = i
            self.offsets.append(tot)
            tot += Phi.dims[_source(ch)]
        self.dim = tot


def bar_complex(C, Phi, N=DEFAULT_N, normalized=True, cap=None):
    """The bar cochain complex ``C^0 -> ... -> C^N`` (sparse differentials)."""
    p = Phi.p
    layouts = [_Layout(supported_chains(C, Phi, n, normalized, cap), Phi) for n in range(N + 1)]
    diffs = [_differential(C, Phi, layouts[n], layouts[n + 1], n, normalized)
             for n in range(N)]
    cx = CochainComplex([L.dim for L in layouts], diffs, p)
    cx.layouts = layouts
    return cx


def _differential(C, Phi, src, tgt, n, normalized):
    p = Phi.p
    rows, cols, vals = [], [], []

    def put(r0, c0, block, sign):
        nz = np.nonzero(block)
        rows.extend((nz[0] + r0).tolist())
        cols.extend((nz[1] + c0).tolist())
        vals.extend(((sign * block[nz]) % p).tolist())

    for ch, r0 in zip(tgt.chains, tgt.offsets):
        c_0 = ch[0].source
        dim0 = Phi.dims[c_0]
        eye = fp.identity(dim0)
        # first face: Phi(chi) applied to xi on the tail
        tail = ch[1:] if n > 0 else (ch[0].target,)
        j = src.index.get(tail)
        if j is not None:
            put(r0, src.offsets[j], Phi.matrix(ch[0]), 1)
        # inner faces
        for i in range(1, n + 1):
            comp = C.compose(ch[i], ch[i - 1])
            if normalized and C.is_identity(comp):
                continue
            face = ch[:i - 1] + (comp,) + ch[i + 1:]
            put(r0, src.offsets[src.index[face]], eye, (-1) ** i)
        # last face
        face = ch[:n] if n > 0 else (c_0,)
        put(r0, src.offsets[src.index[face]], eye, (-1) ** (n + 1))
    shape = (tgt.dim, src.dim)
    M = sp.coo_matrix((vals, (rows, cols)), shape=shape, dtype=np.int64).tocsr()
    M.sum_duplicates()
    M.data %= p
    M.eliminate_zeros()
    return M


def higher_limits(C, Phi, N=DEFAULT_N, method="auto", normalized=True):
    """``dim lim^i Phi`` for ``0 <= i <= N - 1``.

    ``method`` is ``"bar"`` (the bar complex), ``"resolution"`` (Ext over the
    category algebra) or ``"auto"`` (bar complex when ``C^N`` stays below
    ``BAR_AUTO_LIMIT`` coordinates).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if Phi.is_zero():
        return LimitsResult([0] * N, BAR_COMPLEX)
    if method == "auto":
        size = supported_chain_count(C, Phi, N, normalized)
        method = "bar" if size <= BAR_AUTO_LIMIT else "resolution"
    if method == "bar":
        cx = bar_complex(C, Phi, N, normalized)
        return LimitsResult(cx.cohomology_dims(N - 1), BAR_COMPLEX, cx)
    if method == "resolution":
        from .resolution import ExtData
        ext = ExtData(C, Phi, N)
        return LimitsResult(ext.dims(), RESOLUTION, ext.complex, extra={"ext": ext})
    raise ValueError(f"unknown method {method!r}")


def lim0_direct(C, Phi):
    """Compatible families ``(x_c)`` with ``Phi(f) x_b = x_a`` for all ``f: a -> b``.

    Returns ``(dimension, basis)``; basis columns live in ``(+)_c Phi(c)``.
    """
    p = Phi.p
    offs, tot = [], 0
    for a in range(C.n_objects):
        offs.append(tot)
        tot += Phi.dims[a]
    if tot == 0:
        return 0, fp.zeros(0, 0)
    blocks = []
    for f in C.morphisms():
        a, b = f.source, f.target
        if not Phi.dims[a] or C.is_identity(f):
            continue
        E = fp.zeros(Phi.dims[a], tot)
        if Phi.dims[b]:
            E[:, offs[b]:offs[b] + Phi.dims[b]] = Phi.matrix(f)
        E[:, offs[a]:offs[a] + Phi.dims[a]] -= fp.identity(Phi.dims[a])
        blocks.append(E % p)
    if not blocks:
        return tot, fp.identity(tot)
    K = fp.nullspace(np.vstack(blocks), p)
    return K.shape[1], K


def restriction_map(big_cx, small_cx, F, tau, n, p):
    """Cochain restriction ``C^n(D; Phi) -> C^n(C; Phi')`` along a functor ``F``.

    ``xi'(c_0 -> ...) = tau(c_0) xi(F c_0 -> ...)``; chains that ``F`` makes
    degenerate get the value zero.  Returns a function on cochain columns.
    """
    src, tgt = small_cx.layouts[n], big_cx.layouts[n]
    D = F.target

    def image_chain(ch):
        if n == 0:
            return (F.on_objects[ch[0]],)
        out = tuple(F(f) for f in ch)
        if any(D.is_identity(f) for f in out):
            return None
        return out

    def apply(xi):
        xi = np.asarray(xi)
        out = fp.zeros(src.dim, xi.shape[1])
        for ch, r0 in zip(src.chains, src.offsets):
            img = image_chain(ch)
            if img is None:
                continue
            j = tgt.index.get(img)
            if j is None:
                continue
            t = tau(_source(ch))
            block = xi[tgt.offsets[j]:tgt.offsets[j] + t.shape[1]]
            out[r0:r0 + t.shape[0]] = fp.matmul(t, block, p)
        return out

    return apply
