"""F_p[G]-modules and contravariant functors from finite categories to F_p-spaces.

A module is fixed by one matrix per group generator, acting on column
vectors from the left.  A ``CatModule`` stores a dimension per object and
produces, for a morphism ``f: a -> b``, a ``dims[a] x dims[b]`` matrix
(the functor is contravariant).
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import fp
from . import groups as grp
from .orbitcat import CategoryFunctor, OrbitCategory


class FpGModule:
    """A finite-dimensional F_p-representation of a permutation group."""

    def __init__(self, group, p, matrices, name=None, check=True, dim=None):
        if not grp.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.group = group
        self.p = p
        self.name = name
        gens = group.generators
        if isinstance(matrices, dict):
            mats = [matrices[g] for g in gens]
        else:
            mats = list(matrices)
            if len(mats) != len(gens):
                raise ValueError("need one matrix per group generator")
        self.gen_matrices = [fp.reduce(np.atleast_2d(np.asarray(A)), p) for A in mats]
        dims = {A.shape for A in self.gen_matrices}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise ValueError("generator matrices must be square of a common size")
        self._dim = self.gen_matrices[0].shape[0] if self.gen_matrices else dim
        if dim is not None and self._dim != dim:
            raise ValueError("matrix size does not match dim")
        if check:
            self._table  # noqa: B018  (raises on a non-homomorphism)

    @classmethod
    def from_function(cls, group, p, dim, rho, name=None):
        """Module with ``rho(g)`` the matrix of a generator ``g``."""
        mats = [rho(g) for g in group.generators]
        return cls(group, p, mats, name=name, dim=dim)

    @property
    def dim(self):
        return self._dim if self._dim is not None else 0

    def __repr__(self):
        return f"FpGModule({self.name or '?'}, p={self.p}, dim={self.dim})"

    @cached_property
    def _table(self):
        """Matrix of every group element; verifies the homomorphism property."""
        n, p = self.dim, self.p
        e = self.group.identity
        table = {e: fp.identity(n)}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g, A in zip(self.group.generators, self.gen_matrices):
                    y = g * x
                    B = fp.matmul(A, table[x], p)
                    old = table.get(y)
                    if old is None:
                        table[y] = B
                        nxt.append(y)
                    elif not np.array_equal(old, B):
                        raise ValueError("matrices do not define a group homomorphism")
            frontier = nxt
        return table

    def matrix(self, g):
        return self._table[g]

    def acts_trivially(self, g):
        return np.array_equal(self.matrix(g), fp.identity(self.dim))

    def fixed_points(self, H):
        """Basis (columns) of ``Fix_H M``; the kernel basis of the stacked ``h - 1``."""
        return self.fixed_point_data(H)[0]

    def fixed_point_data(self, H):
        """``(basis, free)``: a vector ``v`` of Fix_H M has coordinates ``v[free]``."""
        n = self.dim
        gens = [h for h in H.generators]
        if not gens or n == 0:
            return fp.identity(n), list(range(n))
        A = np.vstack([self.matrix(h) - fp.identity(n) for h in gens])
        return fp.kernel(A, self.p)

    def fixed_dim(self, H):
        return self.fixed_points(H).shape[1]

    def restrict(self, H):
        """The module restricted to a subgroup ``H`` (a group on the same points)."""
        return FpGModule.from_function(H, self.p, self.dim, self.matrix, name=self.name)

    def pullback(self, K, hom):
        """The module over ``K`` obtained through a homomorphism ``hom: K -> G``."""
        return FpGModule.from_function(K, self.p, self.dim, lambda k: self.matrix(hom(k)),
                                       name=self.name)

    def tensor(self, other, product):
        """Outer tensor product over ``G1 x G2`` (``product`` a DirectProduct)."""
        p = self.p
        dim = self.dim * other.dim

        def rho(g):
            return np.kron(self.matrix(product.project(0, g)),
                           other.matrix(product.project(1, g))) % p

        return FpGModule.from_function(product.group, p, dim, rho)

    def direct_sum(self, other):
        def rho(g):
            A, B = self.matrix(g), other.matrix(g)
            out = fp.zeros(self.dim + other.dim, self.dim + other.dim)
            out[:self.dim, :self.dim] = A
            out[self.dim:, self.dim:] = B
            return out

        return FpGModule.from_function(self.group, self.p, self.dim + other.dim, rho)


def trivial_module(G, p, dim=1):
    return FpGModule.from_function(G, p, dim, lambda g: fp.identity(dim), name=f"F{p}^{dim}")


def permutation_module(G, p):
    """``F_p`` on the points of ``G``: ``g e_i = e_{g(i)}``."""
    n = G.degree

    def rho(g):
        A = fp.zeros(n, n)
        A[list(g), list(range(n))] = 1
        return A

    return FpGModule.from_function(G, p, n, rho, name="perm")


# --- functors ---------------------------------------------------------------


class CatModule:
    """Contravariant functor ``C -> F_p-vect`` given by a morphism-matrix rule."""

    def __init__(self, category, p, dims, rule, name=None):
        self.category = category
        self.p = p
        self.dims = list(dims)
        self._rule = rule
        self._cache = {}
        self.name = name

    def __repr__(self):
        return f"CatModule({self.name or '?'}, dims={self.dims})"

    def matrix(self, f):
        A = self._cache.get(f)
        if A is None:
            a, b = f.source, f.target
            if self.dims[a] == 0 or self.dims[b] == 0:
                A = fp.zeros(self.dims[a], self.dims[b])
            else:
                A = fp.reduce(self._rule(f), self.p)
            if A.shape != (self.dims[a], self.dims[b]):
                raise ValueError(f"matrix for {f!r} has shape {A.shape}")
            self._cache[f] = A
        return A

    def is_zero(self):
        return not any(self.dims)

    def check_functoriality(self, limit=10**4):
        C, p = self.category, self.p
        for a in range(C.n_objects):
            if not np.array_equal(self.matrix(C.identity(a)), fp.identity(self.dims[a])):
                return False
        for k, (g, f) in enumerate(C.composable_pairs()):
            if k >= limit:
                break
            lhs = self.matrix(C.compose(g, f))
            rhs = fp.matmul(self.matrix(f), self.matrix(g), p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def pullback(self, F):
        """``Phi o F`` for a functor ``F`` into this module's category."""
        dims = [self.dims[F.on_objects[a]] for a in range(F.source.n_objects)]
        return CatModule(F.source, self.p, dims, lambda f: self.matrix(F(f)), name=self.name)


def atomic_functor(C, M):
    """``F_M``: ``M`` at the trivial subgroup, zero elsewhere; ``[g]`` acts by ``g^-1``."""
    try:
        one = C.trivial_object()
    except KeyError:
        raise ValueError("the trivial subgroup is not an object") from None
    dims = [M.dim if a == one else 0 for a in range(C.n_objects)]
    return CatModule(C, M.p, dims, lambda f: M.matrix(f.rep.inverse()), name="atomic")


def fixedpoint_functor(C, M):
    """``P -> Fix_P M``; ``[g]: P -> Q`` sends ``v`` to ``g^-1 v``."""
    data = [M.fixed_point_data(P) for P in C.objects]
    dims = [B.shape[1] for B, _ in data]

    def rule(f):
        _, free_a = data[f.source]
        Bb, _ = data[f.target]
        img = fp.matmul(M.matrix(f.rep.inverse()), Bb, M.p)
        return img[free_a, :]

    return CatModule(C, M.p, dims, rule, name="fixed-point")


def coinduced_functor(C, c, m0, p):
    """``I_c^{M0}(d) = maps(Mor(c, d), F_p^{m0})`` with action by precomposition."""
    homs = [list(C.hom(c, d)) for d in range(C.n_objects)]
    index = [{phi: i for i, phi in enumerate(h)} for h in homs]
    dims = [len(h) * m0 for h in homs]

    def rule(psi):
        a, b = psi.source, psi.target
        A = fp.zeros(dims[a], dims[b])
        for i, phi in enumerate(homs[a]):
            j = index[b][C.compose(psi, phi)]
            for k in range(m0):
                A[i * m0 + k, j * m0 + k] = 1
        return A

    return CatModule(C, p, dims, rule, name=f"coinduced({c})")


def constant_functor(C, d, p):
    return CatModule(C, p, [d] * C.n_objects, lambda f: fp.identity(d), name=f"constant({d})")


def zero_functor(C, p):
    return CatModule(C, p, [0] * C.n_objects, None, name="zero")


def full_subcategory(C, objs):
    """The full subcategory of an orbit category on the given object indices."""
    S = OrbitCategory(C.group, [C.objects[i] for i in objs], close=False)
    return S, CategoryFunctor(S, C, list(objs),
                              lambda f: type(f)(objs[f.source], objs[f.target], f.rep))


def restrict_functor(Phi, X0):
    """Restriction of ``Phi`` to the full subcategory on object indices ``X0``."""
    C = Phi.category
    X0 = sorted(X0)
    keep = {C.objects[i].element_set for i in X0}
    for i in X0:
        for g in C.group.generators:
            if C.objects[i].conjugate(g).element_set not in keep:
                raise ValueError("object subset is not closed under conjugation")
    S, inc = full_subcategory(C, X0)
    R = Phi.pullback(inc)
    R.name = Phi.name
    return R


def quotient_functor(C, Q, Cbar):
    """``chi: O_X(G) -> O_Y(G/H)`` induced by a QuotientGroup ``Q``."""
    objmap = []
    for K in C.objects:
        try:
            objmap.append(Cbar.position(Q.image(K)))
        except KeyError:
            raise ValueError("image of an object is not in the target object set") from None

    def on_mor(f):
        b = objmap[f.target]
        return type(f)(objmap[f.source], b, Cbar.canonical(b, Q.project(f.rep)))

    return CategoryFunctor(C, Cbar, objmap, on_mor)


def pullback_along_quotient(Phi_bar, C, Q):
    """``Phi_bar o chi`` on ``C = O_X(G)`` for ``Phi_bar`` on ``O_Y(G/H)``."""
    return Phi_bar.pullback(quotient_functor(C, Q, Phi_bar.category))


def nat_transformations(Phi, Psi, basis=False):
    """Dimension of ``Nat(Phi, Psi)`` from the naturality constraints.

    Unknowns are matrices ``X_c: Phi(c) -> Psi(c)``; each morphism
    ``f: a -> b`` imposes ``Psi(f) X_b = X_a Phi(f)``, linearized with
    ``vec(A X B) = (B^T kron A) vec(X)`` (column-major vec).
    """
    C, p = Phi.category, Phi.p
    if Psi.category is not C:
        raise ValueError("functors live on different categories")
    offsets, total = [], 0
    for c in range(C.n_objects):
        offsets.append(total)
        total += Phi.dims[c] * Psi.dims[c]
    blocks = []
    for f in C.morphisms():
        a, b = f.source, f.target
        rows = Psi.dims[a] * Phi.dims[b]
        if rows == 0 or C.is_identity(f):
            continue
        E = fp.zeros(rows, total)
        if Psi.dims[b] * Phi.dims[b]:
            E[:, offsets[b]:offsets[b] + Phi.dims[b] * Psi.dims[b]] += np.kron(
                fp.identity(Phi.dims[b]), Psi.matrix(f))
        if Psi.dims[a] * Phi.dims[a]:
            E[:, offsets[a]:offsets[a] + Phi.dims[a] * Psi.dims[a]] -= np.kron(
                Phi.matrix(f).T, fp.identity(Psi.dims[a]))
        blocks.append(E % p)
    if total == 0:
        return (0, fp.zeros(0, 0)) if basis else 0
    if not blocks:
        return (total, fp.identity(total)) if basis else total
    A = np.vstack(blocks)
    if basis:
        K = fp.nullspace(A, p)
        return K.shape[1], K
    return total - fp.rank(A, p)
