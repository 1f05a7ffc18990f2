"""Built-in example families: truncations of e:HGM groups and the wreath tower.

The e:HGM data: a prime ``p``, a field ``F0`` of order ``q0 >= 3`` and
characteristic ``p``, its degree-``p`` extension ``F``, a subgroup
``1 != U <= F^x`` with ``U`` meeting ``F0^x`` trivially, and ``S`` the
Galois group of ``F/F0`` (order ``p``).  Level ``n`` keeps ``n``
coordinates of ``M = (+) F``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import fp
from . import groups as grp
from .fields import GF
from .gmodules import FpGModule

MEMBERS = ("H", "H0", "Gamma", "Gamma0", "Gamma*")


@dataclass(frozen=True)
class HGMFamily:
    p: int = 2
    q0: int = 4
    u: int = 5
    member: str = "Gamma0"

    def __post_init__(self):
        if self.member not in MEMBERS:
            raise ValueError(f"unknown member {self.member!r}")
        k0 = round(math.log(self.q0, self.p))
        if self.p ** k0 != self.q0 or self.q0 < 3:
            raise ValueError("F0 must have order p^k >= 3")
        q = self.q0 ** self.p
        if (q - 1) % self.u or self.u == 1:
            raise ValueError("U must be a nontrivial subgroup of F^x")
        if math.gcd(self.u, self.q0 - 1) != 1:
            raise ValueError("U must meet F0^x trivially")

    @property
    def k0(self):
        return round(math.log(self.q0, self.p))

    @property
    def q(self):
        return self.q0 ** self.p

    @cached_property
    def field(self):
        return GF(self.p, self.k0 * self.p)

    def with_member(self, member):
        return HGMFamily(self.p, self.q0, self.u, member)


@dataclass
class Truncation:
    """Level-``n`` truncation: the group, its module, and block bookkeeping."""

    family: HGMFamily
    n: int
    group: grp.PermGroup
    module: FpGModule
    block_gens: list
    s_gen: grp.Perm | None
    extra: dict = field(default_factory=dict)

    @property
    def S(self):
        if self.s_gen is None:
            return self.group.trivial_subgroup()
        return grp.generated(self.group, [self.s_gen])


def _blocks(f, n):
    """Cyclic blocks ``(order, field element, coordinates)`` of the member at level n."""
    F = f.field
    z = F.generator
    u_el = F.power(z, (f.q - 1) // f.u)
    coords = list(range(n))
    if f.member in ("H", "Gamma"):
        return [(f.q - 1, z, [i]) for i in coords]
    if f.member in ("H0", "Gamma0"):
        return [(f.u, u_el, [i]) for i in coords]
    return [(f.u, u_el, coords)] + [(f.q - 1, z, [i]) for i in coords]


def hgm_truncate(f, n):
    """The level-``n`` truncation of an e:HGM family member as (group, module)."""
    return _truncate(f, n).group, _truncate(f, n).module


_TRUNC = {}


def truncation(f, n):
    return _truncate(f, n)


def _truncate(f, n):
    key = (f, n)
    if key in _TRUNC:
        return _TRUNC[key]
    F = f.field
    p = f.p
    k = F.k
    blocks = _blocks(f, n)
    with_s = f.member.startswith("Gamma")
    deg_N = sum(m for m, _, _ in blocks)
    gens_N, offs = [], []
    off = 0
    for m, _, _ in blocks:
        offs.append(off)
        off += m
    for (m, _, _), o in zip(blocks, offs):
        img = list(range(deg_N))
        for i in range(m):
            img[o + i] = o + (i + 1) % m
        gens_N.append(grp.Perm(img))
    frob = F.frobenius_matrix(F.k // p)   # x -> x^{q0}
    dim = n * k

    def block_matrix(b):
        _, w, cs = blocks[b]
        A = fp.identity(dim)
        W = F.mult_matrix(w)
        for c in cs:
            A[c * k:(c + 1) * k, c * k:(c + 1) * k] = W
        return A

    S_mat = np.kron(fp.identity(n), frob) if n else fp.zeros(0, 0)
    if not with_s:
        if deg_N == 0:
            G = grp.PermGroup([], degree=1, name=f"{f.member}_{n}")
            M = FpGModule(G, p, [], dim=0)
            T = Truncation(f, n, G, M, [], None)
        else:
            G = grp.PermGroup(gens_N, degree=deg_N, name=f"{f.member}_{n}")
            mats = {g: block_matrix(b) for b, g in enumerate(gens_N)}
            M = FpGModule(G, p, [mats[g] for g in G.generators], dim=dim)
            T = Truncation(f, n, G, M, gens_N, None)
        _TRUNC[key] = T
        return T
    S = grp.cyclic_group(p)
    s = S.generators[0]
    if deg_N == 0:
        G = grp.PermGroup([s], name=f"{f.member}_{n}")
        M = FpGModule(G, p, [fp.zeros(0, 0)], dim=0)
        T = Truncation(f, n, G, M, [], s)
        _TRUNC[key] = T
        return T
    N = grp.PermGroup(gens_N, degree=deg_N)
    act = list(range(deg_N))
    for (m, _, _), o in zip(blocks, offs):
        for i in range(m):
            act[o + i] = o + (f.q0 * i) % m
    sd = grp.semidirect(N, S, {s: grp.Perm(act)}, name=f"{f.member}_{n}")
    G = sd.group
    bg = [sd.embed_N(g) for g in gens_N]
    sg = sd.embed_S(s)
    mats = {g: block_matrix(b) for b, g in enumerate(bg)}
    mats[sg] = S_mat
    M = FpGModule(G, p, [mats[g] for g in G.generators], dim=dim)
    T = Truncation(f, n, G, M, bg, sg, extra={"semidirect": sd})
    _TRUNC[key] = T
    return T


def truncation_inclusion(f, n):
    """``K_n -> K_{n+1}`` as a Homomorphism, plus the module projection ``M_{n+1} -> M_n``."""
    A, B = _truncate(f, n), _truncate(f, n + 1)
    images = {}
    for i, g in enumerate(A.block_gens):
        # Gamma*: block 0 is U in both levels; coordinates keep their index
        images[g] = B.block_gens[i]
    if A.s_gen is not None:
        images[A.s_gen] = B.s_gen
    hom = grp.Homomorphism(A.group, B.group, [images[g] for g in A.group.generators])
    k = f.field.k
    proj = np.hstack([fp.identity(n * k), fp.zeros(n * k, k)])
    return hom, proj


@dataclass(frozen=True)
class FiniteFamily:
    """A finite group with a module, viewed as a constant family."""

    group: grp.PermGroup
    module: FpGModule
    name: str = "finite"

    @property
    def p(self):
        return self.module.p


FAMILIES = {
    "hgm-h": HGMFamily(member="H"),
    "hgm-h0": HGMFamily(member="H0"),
    "hgm-gamma": HGMFamily(member="Gamma"),
    "hgm-gamma0": HGMFamily(member="Gamma0"),
    "hgm-gamma*": HGMFamily(member="Gamma*"),
    "hgm3-gamma0": HGMFamily(p=3, q0=3, u=13, member="Gamma0"),
}


def family(name):
    """A registered family by id (``hgm-gamma0`` etc.)."""
    if isinstance(name, (HGMFamily, FiniteFamily)):
        return name
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None


def family_id(f):
    for k, v in FAMILIES.items():
        if v == f:
            return k
    return getattr(f, "name", repr(f))


# --- wreath tower ----------------------------------------------------------------


class WreathTower:
    """``P_0 = C_p``, ``P_{n+1} = P_n wr C_p`` with ``Q_n`` and ``A_n`` tracked.

    ``Q_0 = 1``, ``A_0 = P_0``, ``Q_{n+1} = Q_n wr C_p``, ``A_{n+1} = A_n^p``.
    ``phi(n, g)`` is ``(g, 1, ..., 1)`` for odd ``n`` and ``(g, ..., g)`` for even ``n``.
    """

    def __init__(self, p, n_max):
        self.p = p
        self.n_max = n_max
        P0 = grp.cyclic_group(p, name="P0")
        self.P = [P0]
        self.Q = [P0.trivial_subgroup()]
        self.A = [P0.whole()]
        self.wreaths = []
        for n in range(n_max):
            W = grp.wreath_Cp(self.P[n], p, name=f"P{n + 1}")
            self.wreaths.append(W)
            P = W.group
            self.P.append(P)
            self.Q.append(_rebase(P, W.wreath_subgroup(self.Q[n])))
            self.A.append(_rebase(P, W.power_subgroup(self.A[n])))

    def phi(self, n, g):
        W = self.wreaths[n]
        return W.base_embedding(g, 0) if n % 2 else W.diagonal(g)

    def phi_subgroup(self, n, H):
        P = self.P[n + 1]
        return grp.Subgroup(P, [self.phi(n, h) for h in H.generators])

    def psi(self, n, m, g):
        """Composite embedding ``P_n -> P_m``."""
        for k in range(n, m):
            g = self.phi(k, g)
        return g


def _rebase(P, H):
    return grp.Subgroup(P, H.generators)


def wreath_tower(p, n_max):
    return WreathTower(p, n_max)


def wreath_checks(T, stages=None, targeted=()):
    """Stage checks for the wreath tower; returns a list of check records.

    ``stages`` are checked in full; ``targeted`` stages only get the
    subgroup-level checks (no commutator subgroup of the stage itself).
    """
    p = T.p
    stages = range(T.n_max + 1) if stages is None else stages
    out = []

    def rec(stage, name, ok, **info):
        out.append({"stage": stage, "check": name, "pass": bool(ok), **info})

    for n in list(stages) + list(targeted):
        P, Q, A = T.P[n], T.Q[n], T.A[n]
        Z = grp.center(P)
        rec(n, "center_order_p", Z.order() == p, order=Z.order())
        rec(n, "A_elementary_abelian_rank_p^n",
            A.is_abelian() and A.order() == p ** (p ** n)
            and all((a ** p).is_identity() for a in A.generators), order=A.order())
        inter = grp.intersection(P, A, Q)
        rec(n, "A_cap_Q_trivial", inter.order() == 1)
        rec(n, "AQ_equals_P", A.order() * Q.order() // inter.order() == P.order())
        if Q.order() < P.order():
            NQ = grp.normalizer(P, Q)
            rec(n, "Q_lt_N(Q)", NQ.order() > Q.order(), Q=Q.order(), NQ=NQ.order())
            B = grp.intersection(P, NQ, A)
            rec(n, "B=N(Q)cap_A_central", B.element_set <= Z.element_set, B=B.order())
        if n + 1 <= T.n_max and n not in targeted:
            if n % 2:
                Z1 = grp.center(T.P[n + 1])
                img = {T.phi(n, z) for z in Z.element_set}
                rec(n, "odd_center_disjoint", (Z1.element_set & img) == {T.P[n + 1].identity})
            else:
                D = _derived_if_small(T, n + 1)
                if D is not None:
                    ok = all(T.phi(n, g) in D for g in P.generators)
                    rec(n, "even_phi_in_commutator", ok, commutator=D.order())
    return out


def _derived_if_small(T, m):
    P = T.P[m]
    if P.order() > grp.ENUMERATION_BOUND:
        return None
    return grp.commutator_subgroup(P)


def run_suite(name):
    """Run a verification suite by id and return its JSON-ready report."""
    from .suites import run_suite as _run
    return _run(name)
