"""E_2 pages of the quotient, Lambda and product spectral sequences.

Differentials are not computed.  Pages and abutments are computed
independently and ``convergence_check`` enforces what convergence forces:
the abutment in total degree ``n`` is at most the sum of the ``E_2`` terms
of total degree ``n``, with equality when the page sits in one row or one
column.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fp
from . import groups as grp
from . import orbitcat as oc
from .barlim import DEFAULT_N, higher_limits
from .gmodules import CatModule, FpGModule, atomic_functor
from .lambdas import lambda_, lambda_category
from .resolution import ExtData, coefficient_map, ext_induced_map


class SpectralInconsistency(AssertionError):
    """A page contradicts its abutment: an implementation error."""


@dataclass
class E2Page:
    """``grid[i][j] = dim E_2^{ij}`` for ``0 <= i, j < N``."""

    grid: list
    theorem: str
    meta: dict = field(default_factory=dict)
    bounded: bool = False   # the page is known to vanish outside the grid

    def __post_init__(self):
        self.grid = [list(map(int, row)) for row in self.grid]
        if any(d < 0 for row in self.grid for d in row):
            raise ValueError("negative dimension in a page")

    @property
    def N(self):
        return len(self.grid)

    def __getitem__(self, ij):
        i, j = ij
        return self.grid[i][j]

    def total(self, n):
        return sum(self.grid[i][n - i] for i in range(n + 1) if i < self.N and n - i < self.N)

    def single_row(self):
        return all(self.grid[i][j] == 0 for i in range(self.N) for j in range(1, self.N))

    def single_column(self):
        return all(self.grid[i][j] == 0 for i in range(1, self.N) for j in range(self.N))

    @property
    def safe_window(self):
        """Total degrees whose contributing entries all lie in the grid."""
        return (0, self.N - 1)

    def as_dict(self):
        return {"theorem": self.theorem, "grid": self.grid, "safe_window": list(self.safe_window),
                "bounded": self.bounded,
                **{k: v for k, v in self.meta.items() if isinstance(v, (int, str, list, bool))}}


def group_cohomology(G, M, N=DEFAULT_N, method="auto"):
    """``dim H^i(G; M)`` for ``0 <= i < N`` (higher limits over one object)."""
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    return higher_limits(C, atomic_functor(C, M), N, method).dims


# --- Kan extension values ---------------------------------------------------------


def _local_category(K, X):
    """``O_{X cap K}(K)`` reduced to a skeleton (objects are members of ``X`` inside ``K``)."""
    Ks = K.element_set
    objs = [grp.as_subgroup(K, L) for L in X if L.element_set <= Ks]
    if not objs:
        raise ValueError("no object of X lies in K")
    return oc.skeleton(oc.OrbitCategory(K, objs))


def _inclusion_hom(K, G):
    return grp.Homomorphism(K, G, list(K.generators))


class _LocalData:
    """``Phi`` pulled back to ``O_{X cap K}(K)`` with its Ext groups."""

    def __init__(self, Phi, K, X, N):
        C = Phi.category
        self.K = K
        self.C = _local_category(K, X)
        self.F = oc.homomorphism_functor(self.C, C, _inclusion_hom(K, C.group))
        self.Phi = Phi.pullback(self.F)
        self.ext = ExtData(self.C, self.Phi, N)
        self.dims = self.ext.dims()


def kan_values(G, H, X, Y, Phi, K, j):
    """``dim (R^j chi_*)(Phi)(K/H) = dim lim^j over O_{X cap K}(K)`` of ``Phi``."""
    K = grp.as_subgroup(G, K)
    if not H.element_set <= K.element_set:
        raise ValueError("K must contain H")
    return _LocalData(Phi, K, X, j + 1).dims[j]


def _transition(Phi, loc1, loc2, g, n):
    """Matrix ``Ext^n(K2) -> Ext^n(K1)`` for ``g K1 g^-1 <= K2``.

    The functor is conjugation by ``g`` followed by the skeleton
    retraction of ``O(K2)``; the coefficient map at ``L`` is ``Phi`` of the
    element carrying the object of ``L`` to the object of its image.
    """
    C = Phi.category
    K1, K2 = loc1.K, loc2.K
    gi = g.inverse()
    conj = grp.Homomorphism(K1, K2, [g * k * gi for k in K1.generators])
    Fg = oc.homomorphism_functor(loc1.C, loc2.C, conj)

    def tau(L):
        R = Fg.on_objects[L]
        c1, c2 = loc1.F.on_objects[L], loc2.F.on_objects[R]
        x = loc2.F.transporters[R] * Fg.transporters[L] * g * loc1.F.transporters[L].inverse()
        return Phi.matrix(C.morphism(c1, c2, x))

    return ext_induced_map(loc1.ext, loc2.ext, Fg, tau, n)


def e2_quotient(G, H, X, Y, Phi, N=DEFAULT_N, method="auto", choice_checks=2):
    """Page ``E_2^{ij} = lim^i_{O_Y(G/H)} (R^j chi_*)(Phi)``.

    ``X`` are the objects of ``Phi.category`` (subgroups of ``G``), ``Y`` a list
    of subgroups of the quotient group ``G/H`` (as returned by
    ``grp.quotient``) containing the image of every member of ``X``.
    ``choice_checks`` morphisms get their matrix recomputed with a second
    lift ``g h`` (``h`` in ``H``) and compared.
    """
    Q = grp.quotient(G, grp.as_subgroup(G, H))
    Gbar = Q.group
    Ysets = {grp.as_subgroup(Gbar, Y0).element_set for Y0 in Y}
    for L in X:
        if Q.image(L).element_set not in Ysets:
            raise ValueError("the image of an object of X is not in Y")
    Cbar = oc.skeleton(oc.OrbitCategory(Gbar, [grp.as_subgroup(Gbar, Y0) for Y0 in Y]))
    locs = [_LocalData(Phi, Q.preimage(Kb), X, N) for Kb in Cbar.objects]
    checks = []
    grid_cols = []
    for j in range(N):
        dims = [loc.dims[j] for loc in locs]

        def rule(f, j=j):
            g = Q.lift(f.rep)
            return _transition(Phi, locs[f.source], locs[f.target], g, j)

        Psi = CatModule(Cbar, Phi.p, dims, rule, name=f"R^{j}chi")
        grid_cols.append(higher_limits(Cbar, Psi, N, method).dims)
        for f in _sample_morphisms(Cbar, Psi, choice_checks):
            h = next((x for x in H.generators), None)
            if h is None:
                break
            g2 = Q.lift(f.rep) * h
            A = Psi.matrix(f)
            B = _transition(Phi, locs[f.source], locs[f.target], g2, j)
            checks.append({"degree": j, "morphism": repr(f), "agree": bool(np.array_equal(A, B))})
    grid = [[grid_cols[j][i] for j in range(N)] for i in range(N)]
    meta = {"quotient_order": Gbar.order(), "kan_dims": [loc.dims for loc in locs],
            "choice_checks": checks}
    return E2Page(grid, "quotient", meta)


def _sample_morphisms(C, Psi, k):
    out = []
    for f in C.morphisms():
        if len(out) >= k:
            break
        if Psi.dims[f.source] and Psi.dims[f.target] and not C.is_identity(f):
            out.append(f)
    return out


def lhs_page(G, H, M, N=DEFAULT_N):
    """``H^i(G/H; H^j(H; M))``: the quotient page with ``X = Y = {1}``."""
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    Phi = atomic_functor(C, M)
    Q = grp.quotient(G, grp.as_subgroup(G, H))
    page = e2_quotient(G, H, [G.trivial_subgroup()], [Q.group.trivial_subgroup()], Phi, N)
    page.theorem = "LHS"
    return page


def e2_lambda_quotient(G, H, p, M, N=DEFAULT_N):
    """Page ``E_2^{ij} = lim^i_{O_p(G/H)} (P/H -> Lambda^j(P; M))``."""
    C = oc.OrbitCategory(G, grp.p_subgroups(G, p))
    Phi = atomic_functor(C, M)
    Q = grp.quotient(G, grp.as_subgroup(G, H))
    Y = grp.p_subgroups(Q.group, p)
    page = e2_quotient(G, H, C.objects, Y, Phi, N)
    page.theorem = "Lambda-quotient"
    return page


# --- products ----------------------------------------------------------------------


def e2_product(prod, p, M, N=DEFAULT_N):
    """Page ``E_2^{ij} = Lambda^i(G_1; Lambda^j(G_2; M))`` for ``prod`` a DirectProduct.

    ``G_1`` acts on ``Lambda^j(G_2; M)`` through the coefficient maps of its
    action on ``M`` (which commutes with ``G_2``).
    """
    G1 = prod.factors[0]
    F2 = prod.factor_subgroup(1)
    M2 = M.restrict(F2)
    C2 = lambda_category(F2, p)
    ext = ExtData(C2, atomic_functor(C2, M2), N)
    one = C2.trivial_object()
    dims2 = ext.dims()
    grid = [[0] * N for _ in range(N)]
    modules = []
    for j in range(N):
        d = dims2[j]
        mats = []
        for g in G1.generators:
            A = M.matrix(prod.embed(0, g))
            mats.append(coefficient_map(ext, j, lambda c, A=A: A if c == one else fp.zeros(0, 0))
                        if d else fp.zeros(0, 0))
        Lj = FpGModule(G1, p, mats, name=f"Lambda^{j}(G2;M)", dim=d) if d else None
        modules.append(Lj)
        col = lambda_(G1, p, Lj, N).dims if d else [0] * N
        for i in range(N):
            grid[i][j] = col[i]
    n1 = _sylow_exponent(G1, p)
    n2 = _sylow_exponent(F2, p)
    page = E2Page(grid, "product", {"lambda_G2": dims2, "sylow_exponents": [n1, n2]},
                  bounded=N - 1 >= n1 + 1 and N - 1 >= n2 + 1)
    page.modules = modules
    return page


def _sylow_exponent(G, p):
    n, s = 0, grp.sylow_p(G, p).order()
    while s > 1:
        s //= p
        n += 1
    return n


# --- convergence ------------------------------------------------------------------


def convergence_check(page, abutment, strict=True):
    """Check ``abutment[n] <= sum_{i+j=n} E_2^{ij}`` on the safe window.

    Equality is required when the page is a single row or column; when the
    page is known to vanish outside its grid and the abutment covers every
    total degree, the alternating sums must agree.  With ``strict`` a
    violation raises SpectralInconsistency.
    """
    lo, hi = page.safe_window
    hi = min(hi, len(abutment) - 1)
    collapse = page.single_row() or page.single_column()
    rows = []
    ok = True
    for n in range(lo, hi + 1):
        s = page.total(n)
        ineq = abutment[n] <= s
        eq = (abutment[n] == s) if collapse else None
        ok &= ineq and (eq is not False)
        rows.append({"n": n, "abutment": int(abutment[n]), "page": s, "inequality": ineq,
                     "equality": eq})
    euler = None
    top = max((i + j for i in range(page.N) for j in range(page.N) if page[i, j]), default=-1)
    if page.bounded and top <= len(abutment) - 1:
        # beyond ``top`` the abutment is bounded by zero page entries
        lhs = sum((-1) ** n * abutment[n] for n in range(len(abutment)))
        rhs = sum((-1) ** (i + j) * page[i, j] for i in range(page.N) for j in range(page.N))
        euler = lhs == rhs
        ok &= euler
    report = {"theorem": page.theorem, "window": [lo, hi], "rows": rows,
              "forced_collapse": collapse, "euler": euler, "pass": bool(ok)}
    if strict and not ok:
        raise SpectralInconsistency(f"page contradicts abutment: {report}")
    return report
