"""Projective resolutions over the category algebra of a small finite category.

Contravariant functors ``C -> F_p-vect`` are right modules over the category
algebra, and ``lim^n Phi = Ext^n(F_p, Phi)`` with ``F_p`` the constant
functor.  The free module on a generator at ``e`` is ``P_e(d) = F_p[Mor(d, e)]``
(Yoneda: ``Hom(P_e, Phi) = Phi(e)``).  A resolution of the constant functor
is built degree by degree: generators of the kernel are chosen greedily,
objects that receive morphisms first.

Elements of a free module ``P`` at an object ``d`` are vectors indexed by
pairs ``(generator g, morphism d -> e_g)``.
"""
from __future__ import annotations

import numpy as np

from . import fp
from .complexes import CochainComplex, RESOLUTION, Cohomology, induced_map


class CategoryTables:
    """Indexed hom-sets and precomposition index arrays for a finite category."""

    def __init__(self, C):
        self.C = C
        m = C.n_objects
        self.homs = [[list(C.hom(d, e)) for e in range(m)] for d in range(m)]
        self.index = [[{f: i for i, f in enumerate(h)} for h in row] for row in self.homs]
        self._pre = {}
        reach = [sum(1 for e in range(m) if self.homs[d][e]) for d in range(m)]
        # an object receiving a morphism from d maps to fewer objects than d
        self.order = sorted(range(m), key=lambda d: (reach[d], d))

    def precompose(self, psi, e):
        """Index array: ``phi in Mor(d, e)`` goes to ``phi o psi in Mor(d', e)``."""
        key = (psi, e)
        arr = self._pre.get(key)
        if arr is None:
            d2 = psi.source
            idx = self.index[d2][e]
            arr = np.array([idx[self.C.compose(phi, psi)] for phi in self.homs[psi.target][e]],
                           dtype=np.int64)
            self._pre[key] = arr
        return arr

    def precompose_all(self, d2, d, e):
        """Rows ``precompose(psi, e)`` for every ``psi`` in ``Mor(d2, d)``."""
        key = (d2, d, e)
        arr = self._pre.get(key)
        if arr is None:
            n = len(self.homs[d][e])
            arr = np.array([self.precompose(psi, e) for psi in self.homs[d2][d]],
                           dtype=np.int64).reshape(len(self.homs[d2][d]), n)
            self._pre[key] = arr
        return arr


class FreeModule:
    """Direct sum of representables, one per generator object."""

    def __init__(self, tables, gens):
        self.T = tables
        self.gens = list(gens)
        m = tables.C.n_objects
        self.offsets = []
        self.dims = []
        for d in range(m):
            offs, tot = [], 0
            for e in self.gens:
                offs.append(tot)
                tot += len(tables.homs[d][e])
            self.offsets.append(offs)
            self.dims.append(tot)

    def act(self, psi, v):
        """``P(psi) v`` for ``psi: d' -> d`` and ``v`` in ``P(d)`` (vector or columns)."""
        d2, d = psi.source, psi.target
        v = np.asarray(v)
        out = np.zeros((self.dims[d2],) + v.shape[1:], dtype=np.int64)
        for g, e in enumerate(self.gens):
            n = len(self.T.homs[d][e])
            if n == 0:
                continue
            idx = self.T.precompose(psi, e) + self.offsets[d2][g]
            s = self.offsets[d][g]
            np.add.at(out, idx, v[s:s + n])
        return out

    def act_all(self, d2, d, v):
        """Rows ``P(psi) v`` for every ``psi`` in ``Mor(d2, d)`` (``v`` a vector)."""
        npsi = len(self.T.homs[d2][d])
        out = np.zeros((npsi, self.dims[d2]), dtype=np.int64)
        flat = out.reshape(-1)
        base = (np.arange(npsi, dtype=np.int64) * self.dims[d2])[:, None]
        for g, e in enumerate(self.gens):
            n = len(self.T.homs[d][e])
            if n == 0:
                continue
            s = self.offsets[d][g]
            seg = v[s:s + n]
            nz = np.nonzero(seg)[0]
            if not len(nz):
                continue
            idx = self.T.precompose_all(d2, d, e)[:, nz] + self.offsets[d2][g] + base
            np.add.at(flat, idx.reshape(-1), np.broadcast_to(seg[nz], idx.shape).reshape(-1))
        return out


class Resolution:
    """``... -> P_1 -> P_0 -> F_p`` truncated at a requested length.

    ``boundary[n][g]`` is the image of generator ``g`` of ``P_n`` inside
    ``P_{n-1}(e_g)`` (for ``n = 0`` it is the augmentation value ``1``).
    """

    def __init__(self, C, p, length):
        self.C = C
        self.p = p
        self.T = CategoryTables(C)
        self.modules = []
        self.boundary = []
        m = C.n_objects
        # degree 0 resolves the constant functor
        kernel_bases, ambient = self._augmentation_step()
        for n in range(1, length + 1):
            gens, images = self._choose_generators(ambient, kernel_bases)
            P = FreeModule(self.T, gens)
            self.modules.append(P)
            self.boundary.append(images)
            D = [self._boundary_matrix(n, d) for d in range(m)]
            kernel_bases = [fp.kernel(D[d], p) if P.dims[d] else (fp.zeros(0, 0), [])
                            for d in range(m)]
            ambient = P

    def _augmentation_step(self):
        C, p, T = self.C, self.p, self.T
        m = C.n_objects
        # greedy generators of the constant functor: one per object not yet reached
        gens = []
        reached = [False] * m
        for d in T.order:
            if not reached[d]:
                gens.append(d)
                for d2 in range(m):
                    if T.homs[d2][d]:
                        reached[d2] = True
        P = FreeModule(T, gens)
        self.modules.append(P)
        self.boundary.append([np.ones(1, dtype=np.int64) for _ in gens])
        kernels = []
        for d in range(m):
            aug = np.ones((1, P.dims[d]), dtype=np.int64)
            kernels.append(fp.kernel(aug, p) if P.dims[d] else (fp.zeros(0, 0), []))
        return kernels, P

    def _boundary_matrix(self, n, d):
        """Matrix of ``P_n(d) -> P_{n-1}(d)``; column ``(g, psi)`` is ``P_{n-1}(psi) b_g``."""
        P, Q = self.modules[n], self.modules[n - 1]
        D = fp.zeros(Q.dims[d], P.dims[d])
        for g, e in enumerate(P.gens):
            s = P.offsets[d][g]
            k = len(self.T.homs[d][e])
            if k:
                D[:, s:s + k] = Q.act_all(d, e, self.boundary[n][g]).T
        return D % self.p

    def _choose_generators(self, P, kernels):
        """Greedy generating set of the submodule with values ``kernels[d]`` of ``P``.

        ``kernels[d]`` is ``(K, free)`` from ``fp.kernel``; spans are kept in the
        coordinates ``v[free]``, where a basis column of ``K`` is a unit vector.
        """
        T, p = self.T, self.p
        gens, images = [], []
        for d in T.order:
            K, free = kernels[d]
            target = K.shape[1]
            if target == 0:
                continue
            vecs = [P.act_all(d, e, y)[:, free] for e, y in zip(gens, images) if T.homs[d][e]]
            R, piv = fp.rref(np.vstack(vecs), p) if vecs else (fp.zeros(0, target), [])
            j = 0
            while len(piv) < target:
                row = {c: i for i, c in enumerate(piv)}
                # e_j lies in the row space iff its pivot row is e_j itself
                while j in row and np.count_nonzero(R[row[j]]) == 1:
                    j += 1
                v = K[:, j]
                j += 1
                gens.append(d)
                images.append(v)
                orbit = P.act_all(d, d, v)[:, free]
                R, piv = fp.rref(np.vstack([R, orbit]), p)
        return gens, images

    @property
    def length(self):
        return len(self.modules) - 1

    def cochain_complex(self, Phi, upto=None):
        """``Hom(P_n, Phi) = (+)_g Phi(e_g)`` with the induced coboundaries."""
        upto = self.length if upto is None else upto
        p = self.p
        dims, offsets = [], []
        for n in range(upto + 1):
            offs, tot = [], 0
            for e in self.modules[n].gens:
                offs.append(tot)
                tot += Phi.dims[e]
            offsets.append(offs)
            dims.append(tot)
        diffs = []
        for n in range(upto):
            P, Q = self.modules[n + 1], self.modules[n]
            D = fp.zeros(dims[n + 1], dims[n])
            for g2, e2 in enumerate(P.gens):
                r = offsets[n + 1][g2]
                b = self.boundary[n + 1][g2]
                for g, e in enumerate(Q.gens):
                    c = offsets[n][g]
                    s = Q.offsets[e2][g]
                    for j, phi in enumerate(self.T.homs[e2][e]):
                        coeff = b[s + j] % p
                        if coeff and Phi.dims[e2] and Phi.dims[e]:
                            D[r:r + Phi.dims[e2], c:c + Phi.dims[e]] += coeff * Phi.matrix(phi)
            diffs.append(D % p)
        cx = CochainComplex(dims, diffs, p)
        cx.offsets = offsets
        return cx

    def evaluate(self, n, alpha, Phi, offsets, d, y):
        """``alpha(y)`` for a cochain ``alpha`` on ``P_n`` and ``y`` in ``P_n(d)``.

        ``alpha`` may hold several cochains as columns.
        """
        P = self.modules[n]
        alpha = np.atleast_2d(alpha.T).T if alpha.ndim == 1 else alpha
        out = fp.zeros(Phi.dims[d], alpha.shape[1])
        for g, e in enumerate(P.gens):
            if not Phi.dims[e]:
                continue
            c = offsets[n][g]
            block = alpha[c:c + Phi.dims[e]]
            s = P.offsets[d][g]
            for j, phi in enumerate(self.T.homs[d][e]):
                coeff = y[s + j] % self.p
                if coeff:
                    out += coeff * (Phi.matrix(phi) @ block)
        return out % self.p


_CACHE = {}


def resolution(C, p, length):
    """Cached resolution of the constant functor on ``C`` up to ``P_length``."""
    key = (id(C), p)
    R = _CACHE.get(key)
    if R is None or R.length < length or R.C is not C:
        R = Resolution(C, p, length)
        _CACHE[key] = R
    return R


def ext_complex(C, Phi, N):
    """Cochain complex ``Hom(P_*, Phi)`` through degree ``N`` (valid through ``N - 1``)."""
    R = resolution(C, Phi.p, N)
    return R, R.cochain_complex(Phi, N)


# --- induced maps -------------------------------------------------------------


def comparison_map(Rs, Rt, F, length):
    """Chain map ``theta: P'_* -> F^* P_*`` over the identity of ``F_p``.

    ``Rs`` resolves the constant functor on ``F.source``, ``Rt`` on
    ``F.target``.  ``theta[n][g]`` is the image of generator ``g`` of
    ``P'_n`` inside ``P_n(F e_g)``.
    """
    p = Rs.p
    theta = []
    for n in range(length + 1):
        Ps = Rs.modules[n]
        Pt = Rt.modules[n]
        imgs = []
        for g, e in enumerate(Ps.gens):
            Fe = F.on_objects[e]
            if n == 0:
                # any element with augmentation 1
                y = np.zeros(Pt.dims[Fe], dtype=np.int64)
                y[0] = 1
                imgs.append(y)
                continue
            # target of the boundary: theta_{n-1}(d x'_g) in P_{n-1}(Fe)
            b = Rs.boundary[n][g]
            rhs = _apply_theta(Rs, Rt, F, theta[n - 1], n - 1, e, b)
            D = Rt._boundary_matrix(n, Fe)
            imgs.append(fp.solve(D, rhs, p))
        theta.append(imgs)
    return theta


def _apply_theta(Rs, Rt, F, theta_n, n, d, y):
    """``theta_n(y)`` for ``y`` in ``P'_n(d)``, landing in ``P_n(F d)``."""
    Ps, Pt = Rs.modules[n], Rt.modules[n]
    out = np.zeros(Pt.dims[F.on_objects[d]], dtype=np.int64)
    for g, e in enumerate(Ps.gens):
        s = Ps.offsets[d][g]
        for j, phi in enumerate(Rs.T.homs[d][e]):
            c = y[s + j] % Rs.p
            if c:
                out += c * Pt.act(F(phi), theta_n[g])
    return out % Rs.p


def induced_cochain_map(Rs, Rt, F, Phi, Phi_src, tau, n, theta, cx_t):
    """Cochain-level map ``Hom(P_n, Phi) -> Hom(P'_n, Phi_src)``.

    ``tau(c)`` is the matrix ``Phi(F c) -> Phi_src(c)`` of a natural
    transformation ``F^* Phi -> Phi_src``.
    """
    Ps = Rs.modules[n]
    p = Rs.p

    def apply(alpha):
        alpha = np.asarray(alpha)
        blocks = []
        for g, e in enumerate(Ps.gens):
            if not Phi_src.dims[e]:
                continue
            val = Rt.evaluate(n, alpha, Phi, cx_t.offsets, F.on_objects[e], theta[n][g])
            blocks.append(fp.matmul(tau(e), val, p))
        if not blocks:
            return fp.zeros(0, alpha.shape[1])
        return np.vstack(blocks) % p

    return apply


class ExtData:
    """Ext groups of a functor with representatives, ready for induced maps."""

    def __init__(self, C, Phi, N):
        self.C = C
        self.Phi = Phi
        self.N = N
        self.res, self.complex = ext_complex(C, Phi, N)
        self._coh = {}

    def dims(self):
        return self.complex.cohomology_dims(self.N - 1)

    def cohomology(self, n):
        h = self._coh.get(n)
        if h is None:
            h = self.complex.cohomology(n)
            self._coh[n] = h
        return h


def ext_induced_map(src, tgt, F, tau, n):
    """Matrix of ``Ext^n_target(Phi) -> Ext^n_source(Phi_src)`` along ``F`` and ``tau``.

    ``src``/``tgt`` are ExtData on ``F.source``/``F.target``.
    """
    theta = comparison_map(src.res, tgt.res, F, n)
    cmap = induced_cochain_map(src.res, tgt.res, F, tgt.Phi, src.Phi, tau, n, theta, tgt.complex)
    return induced_map(tgt.cohomology(n), src.cohomology(n), cmap, src.Phi.p)


def coefficient_map(ext, n, tau):
    """Map on ``Ext^n`` induced by an endo-transformation ``tau(c)`` of the coefficients."""
    cx, res = ext.complex, ext.res
    P = res.modules[n]
    p = ext.Phi.p

    def apply(alpha):
        out = np.zeros_like(alpha)
        for g, e in enumerate(P.gens):
            d = ext.Phi.dims[e]
            if d:
                c = cx.offsets[n][g]
                out[c:c + d] = fp.matmul(tau(e), alpha[c:c + d], p)
        return out

    h = ext.cohomology(n)
    return induced_map(h, h, apply, p)


__all__ = ["Resolution", "resolution", "ext_complex", "ExtData", "ext_induced_map",
           "coefficient_map", "comparison_map", "RESOLUTION", "Cohomology"]
