"""Finite windows of towers over cofinal chains of finite subgroups.

A countable locally finite group is approximated by a chain
``K_0 <= K_1 <= ... <= K_N`` of finite subgroups.  Towers of finite
dimensional spaces indexed by the chain are computed exactly on the window
``0..N``.  Statements about the infinite tower (``lim``, ``lim^1``) are
only classified, under a growth certificate that is verified on the window
and carried as an explicit extrapolation hypothesis.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import corpus as cp
from . import fp
from . import groups as grp
from . import orbitcat as oc
from .barlim import BAR_AUTO_LIMIT, bar_complex, restriction_map, supported_chain_count
from .complexes import RESOLUTION, induced_map
from .gmodules import CatModule, atomic_functor
from .lambdas import SHORTCUT_SYLOW_P, lambda_category
from .orbitcat import Arrow, FiniteCategory
from .resolution import ExtData, ext_induced_map

EXTRAPOLATION_TAG = "certified under window-extrapolation hypothesis"
STABILIZING = "STABILIZING"
UNBOUNDED_QUOTIENT = "UNBOUNDED_QUOTIENT"


class CertificateError(ValueError):
    """A growth certificate is contradicted by the window data."""


# --- posets -----------------------------------------------------------------------


class FinitePoset(FiniteCategory):
    """A finite poset as a category: one arrow ``a -> b`` when ``a <= b``."""

    def __init__(self, elements, leq):
        self.objects = list(elements)
        m = len(self.objects)
        self._leq = [[bool(leq(self.objects[a], self.objects[b])) for b in range(m)]
                     for a in range(m)]
        L = self._leq
        for a in range(m):
            if not L[a][a]:
                raise ValueError("order relation is not reflexive")
            for b in range(m):
                if a != b and L[a][b] and L[b][a]:
                    raise ValueError("order relation is not antisymmetric")
                for c in range(m):
                    if L[a][b] and L[b][c] and not L[a][c]:
                        raise ValueError("order relation is not transitive")

    @classmethod
    def chain(cls, n):
        """The chain ``0 < 1 < ... < n``."""
        return cls(range(n + 1), lambda a, b: a <= b)

    def leq(self, a, b):
        return self._leq[a][b]

    def hom(self, a, b):
        return (Arrow(a, b),) if self._leq[a][b] else ()

    def compose(self, f, g):
        if g.target != f.source:
            raise ValueError("arrows are not composable")
        return Arrow(g.source, f.target)

    def identity(self, a):
        return Arrow(a, a)

    def is_identity(self, f):
        return f.source == f.target

    def is_directed(self):
        m = self.n_objects
        return all(any(self._leq[a][c] and self._leq[b][c] for c in range(m))
                   for a in range(m) for b in range(m))


# --- towers and certificates ---------------------------------------------------


@dataclass
class TowerWindow:
    """Spaces ``dims[0..N]`` with ``maps[n]: T_{n+1} -> T_n`` (shape ``dims[n] x dims[n+1]``)."""

    dims: list
    maps: list
    p: int
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError("need one structure map per consecutive pair")
        for n, A in enumerate(self.maps):
            if A.shape != (self.dims[n], self.dims[n + 1]):
                raise ValueError(f"map {n + 1}->{n} has shape {A.shape}, "
                                 f"expected {(self.dims[n], self.dims[n + 1])}")

    @property
    def top(self):
        return len(self.dims) - 1

    def composite(self, a, b):
        """``T_b -> T_a`` for ``a <= b``."""
        A = fp.identity(self.dims[b])
        for n in range(b - 1, a - 1, -1):
            A = fp.matmul(self.maps[n], A, self.p)
        return A

    def map_ranks(self):
        return [fp.rank(A, self.p) if A.size else 0 for A in self.maps]

    def surjective(self):
        return [r == self.dims[n] for n, r in enumerate(self.map_ranks())]

    def stable_images(self):
        """Per index ``n < N``: image of ``T_{n+1}`` equals image of ``T_N`` in ``T_n``."""
        out = []
        for n in range(self.top):
            r1 = fp.rank(self.maps[n], self.p) if self.maps[n].size else 0
            C = self.composite(n, self.top)
            r2 = fp.rank(C, self.p) if C.size else 0
            out.append(r1 == r2)
        return out

    def functor(self):
        """The tower as a contravariant functor on the chain poset."""
        P = FinitePoset.chain(self.top)
        return P, CatModule(P, self.p, self.dims, lambda f: self.composite(f.source, f.target),
                            name=self.label or "tower")

    def as_dict(self):
        return {"label": self.label, "dims": list(self.dims), "p": self.p,
                "map_ranks": self.map_ranks(), "window": [0, self.top]}


@dataclass(frozen=True)
class DimensionLaw:
    """The affine law ``n -> a n + b``."""

    a: int
    b: int

    def __call__(self, n):
        return self.a * n + self.b

    @classmethod
    def fit(cls, dims):
        """The law through the first two values; ``None`` if it misses a later one."""
        if not dims:
            return None
        b = dims[0]
        a = dims[1] - dims[0] if len(dims) > 1 else 0
        law = cls(a, b)
        return law if all(law(n) == d for n, d in enumerate(dims)) else None

    def __str__(self):
        return f"{self.a}n+{self.b}"


@dataclass(frozen=True)
class GrowthCertificate:
    kind: str
    law: DimensionLaw
    surjective: bool

    def verify(self, T):
        """Raise CertificateError unless the window agrees with every claim."""
        if self.kind not in (STABILIZING, UNBOUNDED_QUOTIENT):
            raise CertificateError(f"unknown certificate kind {self.kind!r}")
        bad = [n for n, d in enumerate(T.dims) if self.law(n) != d]
        if bad:
            raise CertificateError(f"dimension law {self.law} fails at indices {bad}")
        surj = T.surjective()
        if self.surjective and not all(surj):
            raise CertificateError(f"maps at {[n for n, s in enumerate(surj) if not s]} "
                                   "are not surjective")
        if self.kind == STABILIZING and not all(T.stable_images()):
            raise CertificateError("images do not stabilize on the window")
        if self.kind == UNBOUNDED_QUOTIENT:
            if self.law.a <= 0:
                raise CertificateError("an unbounded quotient tower must grow")
            if not self.surjective:
                raise CertificateError("an unbounded quotient tower needs surjective maps")
        return True


def certify(T, kind):
    """The certificate of the given kind read off the window (verified before return)."""
    law = DimensionLaw.fit(T.dims)
    if law is None:
        raise CertificateError(f"dimensions {T.dims} follow no affine law")
    cert = GrowthCertificate(kind, law, all(T.surjective()))
    cert.verify(T)
    return cert


def window_lim(T):
    """Limit of the finite chain: families are determined by their top value.

    Returns ``(dim, basis)``; basis columns live in ``(+)_n T_n`` and are the
    compatible families generated by basis vectors of the top term.
    """
    offs = np.cumsum([0] + list(T.dims))
    N = T.top
    basis = fp.zeros(int(offs[-1]), T.dims[N])
    for n in range(N + 1):
        basis[offs[n]:offs[n + 1]] = T.composite(n, N)
    return T.dims[N], basis


def classify_lim1(T, cert, source_dim_law=None):
    """Classification report for ``lim^1`` (STABILIZING) or a cokernel (UNBOUNDED_QUOTIENT).

    STABILIZING: the Mittag-Leffler condition holds on the window, so
    ``lim^1 T = 0`` under extrapolation.  UNBOUNDED_QUOTIENT: ``T`` is a
    strictly growing surjective tower of quotients of a countable
    dimensional source; the limit has uncountable dimension, so
    ``coker[source -> lim T]`` is nonzero.
    """
    cert.verify(T)
    report = {"tower": T.as_dict(), "certificate": {"kind": cert.kind, "law": str(cert.law),
                                                    "surjective": cert.surjective},
              "extrapolation": EXTRAPOLATION_TAG}
    if cert.kind == STABILIZING:
        report.update(classification="ZERO", lim1=0,
                      reason="images stabilize on the window (Mittag-Leffler)")
        return report
    if source_dim_law is None:
        raise CertificateError("an unbounded quotient certificate needs the source law")
    report.update(classification="NONZERO", source_law=str(source_dim_law),
                  reason="limit of a strictly growing surjective tower has uncountable "
                         "dimension; the source has countable dimension")
    return report


# --- truncation chains -------------------------------------------------------------


@dataclass
class TruncationChain:
    """Nested groups ``K_n`` with modules ``M_n``, inclusions and module projections."""

    family: object
    groups: list
    modules: list
    homs: list          # homs[n]: K_n -> K_{n+1}
    projections: list   # projections[n]: M_{n+1} -> M_n

    @property
    def top(self):
        return len(self.groups) - 1

    @property
    def p(self):
        return self.modules[0].p

    def into(self, n, m):
        """Composite inclusion ``K_n -> K_m``."""
        h = None
        for k in range(n, m):
            h = self.homs[k] if h is None else self.homs[k].compose(h)
        if h is None:
            G = self.groups[n]
            return grp.Homomorphism(G, G, list(G.generators))
        return h

    def projection(self, n, m):
        """Composite projection ``M_m -> M_n``."""
        A = fp.identity(self.modules[m].dim)
        for k in range(m - 1, n - 1, -1):
            A = fp.matmul(self.projections[k], A, self.p)
        return A


_CHAINS = {}


def fin_truncation_chain(family, N_max):
    """Cofinal chain ``K_0 <= ... <= K_{N_max}`` of a registered family."""
    f = cp.family(family)
    key = (f, N_max)
    if key in _CHAINS:
        return _CHAINS[key]
    if isinstance(f, cp.FiniteFamily):
        G, M = f.group, f.module
        ident = grp.Homomorphism(G, G, list(G.generators))
        chain = TruncationChain(f, [G] * (N_max + 1), [M] * (N_max + 1), [ident] * N_max,
                                [fp.identity(M.dim)] * N_max)
    else:
        Gs, Ms, homs, projs = [], [], [], []
        for n in range(N_max + 1):
            G, M = cp.hgm_truncate(f, n)
            Gs.append(G)
            Ms.append(M)
            if n < N_max:
                h, P = cp.truncation_inclusion(f, n)
                homs.append(h)
                projs.append(P)
        chain = TruncationChain(f, Gs, Ms, homs, projs)
    _CHAINS[key] = chain
    return chain


def _level_ext(G, M, j):
    C = lambda_category(G, M.p)
    Phi = atomic_functor(C, M)
    return C, Phi, ExtData(C, Phi, j + 1)


def _atomic_tau(C_src, C_tgt, F, P):
    one_s = C_src.trivial_object()

    def tau(c):
        if c == one_s:
            return P
        return fp.zeros(0, 0)

    return tau


# groups up to this order get exact resolution towers in "auto" mode
TOWER_EXACT_ORDER = int(os.environ.get("HIGHERLIM_TOWER_EXACT_ORDER", 400))


def lambda_tower(family, j, N_max, method="auto", cross_check=True, tail_check=True):
    """The inverse system ``n -> Lambda^j(K_n; M_n)`` on the window ``0..N_max``.

    ``method="resolution"``: structure maps come from the functor
    ``O_p(K_n) -> O_p(K_{n+1})`` of the inclusion together with the module
    projection, computed on resolution cochains (cross-checked against
    bar-cochain restriction when both bar complexes are small).
    ``method="shortcut"`` needs Sylow subgroups of order ``p``: values are
    ``Fix_{N_K(S)} M / Fix_K M`` in degree 1 and zero otherwise, maps are
    induced by the module projection, and small levels are checked against
    the exact computation.  ``"auto"`` picks the exact route when every
    ``K_n`` has order at most ``TOWER_EXACT_ORDER``.

    ``meta["tail"][n]`` is ``dim Lambda^j(K_n; M_{n+1}) - dim Lambda^j(K_n; M_n)``:
    a nonzero value means coordinates outside the truncation contribute, so
    the window does not see the full module.
    """
    chain = fin_truncation_chain(family, N_max)
    if method == "auto":
        small = all(G.order() <= TOWER_EXACT_ORDER for G in chain.groups)
        method = "resolution" if small or not _sylow_order_p(chain) else "shortcut"
    if method == "resolution":
        T = _exact_tower(chain, j, cross_check)
    elif method == "shortcut":
        if not _sylow_order_p(chain):
            raise ValueError("the shortcut tower needs Sylow subgroups of order p")
        T = _shortcut_tower(chain, j, cross_check)
    else:
        raise ValueError(f"unknown method {method!r}")
    T.label = f"Lambda^{j}({cp.family_id(chain.family)})"
    T.meta["orders"] = [G.order() for G in chain.groups]
    tail = []
    if tail_check and not isinstance(chain.family, cp.FiniteFamily):
        nxt = fin_truncation_chain(family, N_max + 1)
        for n in range(N_max + 1):
            Mbig = nxt.modules[n + 1].pullback(nxt.groups[n], nxt.homs[n])
            if method == "resolution":
                _, _, ext = _level_ext(nxt.groups[n], Mbig, j)
                d = ext.dims()[j]
            else:
                d = _shortcut_value(nxt, n, Mbig, j)[0].shape[1]
            tail.append(d - T.dims[n])
    T.meta["tail"] = tail
    return T


def _sylow_order_p(chain):
    return all(grp.sylow_p(G, chain.p).order() == chain.p for G in chain.groups)


def _exact_tower(chain, j, cross_check):
    p = chain.p
    levels = [_level_ext(G, M, j) for G, M in zip(chain.groups, chain.modules)]
    dims = [ext.dims()[j] for _, _, ext in levels]
    maps, bar_checks = [], []
    for n in range(chain.top):
        Cs, Ps, es = levels[n]
        Ct, Pt, et = levels[n + 1]
        F = oc.homomorphism_functor(Cs, Ct, chain.homs[n])
        tau = _atomic_tau(Cs, Ct, F, chain.projections[n])
        A = ext_induced_map(es, et, F, tau, j)
        maps.append(A)
        if cross_check and _bar_small(Cs, Ps, j) and _bar_small(Ct, Pt, j):
            bs, bt = bar_complex(Cs, Ps, j + 1), bar_complex(Ct, Pt, j + 1)
            B = induced_map(bt.cohomology(j), bs.cohomology(j),
                            restriction_map(bt, bs, F, tau, j, p), p)
            bar_checks.append({"map": f"{n + 1}->{n}", "rank_resolution": fp.rank(A, p),
                               "rank_bar": fp.rank(B, p),
                               "agree": fp.rank(A, p) == fp.rank(B, p)})
    return TowerWindow(dims, maps, p, meta={"degree": j, "provenance": RESOLUTION,
                                            "bar_checks": bar_checks})


def _shortcut_value(chain, n, M, j):
    """``(reps, coords)`` of ``Fix_{N_K(S)} M / Fix_K M`` (degree 1) or of zero."""
    K = chain.groups[n]
    if j != 1:
        return fp.zeros(M.dim, 0), lambda v: fp.zeros(0, np.asarray(v).shape[1])
    NS = _sylow_normalizer(K, chain, n)
    return fp.quotient_coordinates(M.fixed_points(K.whole()), M.fixed_points(NS), chain.p)


def _shortcut_tower(chain, j, cross_check):
    p = chain.p
    quots = [_shortcut_value(chain, n, M, j) for n, M in enumerate(chain.modules)]
    dims = [q[0].shape[1] for q in quots]
    maps = []
    for n in range(chain.top):
        reps = quots[n + 1][0]
        if reps.shape[1] and dims[n]:
            maps.append(fp.reduce(quots[n][1](fp.matmul(chain.projections[n], reps, p)), p))
        else:
            maps.append(fp.zeros(dims[n], dims[n + 1]))
    checks = []
    if cross_check:
        for n, (G, M) in enumerate(zip(chain.groups, chain.modules)):
            if G.order() <= TOWER_EXACT_ORDER:
                d = _level_ext(G, M, j)[2].dims()[j]
                checks.append({"level": n, "exact": d, "shortcut": dims[n],
                               "agree": d == dims[n]})
    return TowerWindow(dims, maps, p, meta={"degree": j, "provenance": SHORTCUT_SYLOW_P,
                                            "exact_checks": checks})


def _bar_small(C, Phi, j):
    return Phi.is_zero() or supported_chain_count(C, Phi, j + 1) <= BAR_AUTO_LIMIT // 4


# --- fixed-point quotient towers -------------------------------------------------------


def fixed_quotient_tower(family, N_max, inner, outer, label=""):
    """``B_n = Fix_{inner(K_n)} M / Fix_{outer(K_n)} M`` with ``M = M_{N_max}``.

    ``inner(K, chain, n)`` and ``outer(...)`` return subgroups of ``K_n`` with
    ``inner <= outer`` and ``outer(K_n) <= outer(K_{n+1})``; fixed points are
    taken in the top module through the inclusion ``K_n -> K_{N_max}``, so
    ``B_{n+1} -> B_n`` is induced by the identity.
    """
    chain = fin_truncation_chain(family, N_max)
    p, N = chain.p, chain.top
    M = chain.modules[N]
    big, subs = None, []
    for n in range(N + 1):
        h = chain.into(n, N)
        K = chain.groups[n]
        I = h.image(inner(K, chain, n))
        O = h.image(outer(K, chain, n))
        V = M.fixed_points(I)
        if big is None:
            big = V
        elif not fp.rank(big, p) == fp.rank(V, p) == fp.rank(np.hstack([big, V]), p):
            raise ValueError("the inner subgroups must have the same fixed points on the window")
        subs.append(M.fixed_points(O))
    quots = [fp.quotient_coordinates(W, big, p) for W in subs]
    dims = [reps.shape[1] for reps, _ in quots]
    maps = []
    for n in range(N):
        reps, _ = quots[n + 1]
        _, coords = quots[n]
        maps.append(fp.reduce(coords(reps), p) if reps.shape[1] and dims[n] else
                    fp.zeros(dims[n], dims[n + 1]))
    return TowerWindow(dims, maps, p, label=label, meta={"ambient_dim": big.shape[1]})


def _sylow(K, chain, n):
    # the truncation's own S, which every inclusion carries to S
    f = chain.family
    if isinstance(f, cp.HGMFamily):
        return grp.as_subgroup(K, cp.truncation(f, n).S)
    return grp.sylow_p(K, chain.p)


def _trivial(K, chain, n):
    return K.trivial_subgroup()


def _whole(K, chain, n):
    return K.whole()


def _sylow_normalizer(K, chain, n):
    return grp.normalizer(K, _sylow(K, chain, n))


def module_quotient_tower(family, N_max):
    """``M / Fix_{K_n} M``: the tower of the fixed-point functor's ``lim^1``."""
    return fixed_quotient_tower(family, N_max, _trivial, _whole,
                                label=f"M/Fix({cp.family_id(cp.family(family))})")


def sylow_quotient_towers(family, N_max):
    """The towers ``Fix_S M / Fix_K M`` and ``Fix_S M / Fix_{N_K(S)} M``.

    Requires a Sylow ``p``-subgroup ``S`` of order ``p`` common to all ``K_n``.
    """
    chain = fin_truncation_chain(family, N_max)
    S_orders = {grp.sylow_p(K, chain.p).order() for K in chain.groups}
    if S_orders != {chain.p}:
        raise ValueError("the family does not have Sylow subgroups of order p")
    fid = cp.family_id(chain.family)
    A = fixed_quotient_tower(family, N_max, _sylow, _whole, label=f"Fix_S/Fix_K({fid})")
    B = fixed_quotient_tower(family, N_max, _sylow, _sylow_normalizer,
                             label=f"Fix_S/Fix_N(S)({fid})")
    return A, B


def source_law(family, N_max, inner=_trivial):
    """Dimensions of ``Fix_{inner} M_N / Fix_{K_N} M_N`` for ``N = 0..N_max``."""
    chain = fin_truncation_chain(family, N_max)
    dims = []
    for N in range(N_max + 1):
        K, M = chain.groups[N], chain.modules[N]
        dims.append(M.fixed_dim(inner(K, chain, N)) - M.fixed_dim(K.whole()))
    return dims


def _countable_source(dims):
    law = DimensionLaw.fit(dims)
    if law is None:
        raise CertificateError(f"source dimensions {dims} follow no affine law")
    return law


# --- countable short exact sequences ------------------------------------------------


def _lim_description(T, cert, f):
    if not any(T.dims):
        return "0", 0
    if cert.law.a == 0:
        return f"finite of dimension {cert.law.b}", cert.law.b
    k0 = getattr(f, "k0", None)
    if k0 is not None and cert.law.a == k0:
        return "product of F0 coordinates", None
    return f"product of {cert.law.a}-dimensional coordinates", None


def ses_check_countable(family, i, N_max):
    """``0 -> lim^1 Lambda^{i-1} -> Lambda^i -> lim Lambda^i -> 0`` on the window.

    The ``lim`` term is read off ``lambda_tower(family, i)``.  The ``lim^1``
    term comes from ``lambda_tower(family, i - 1)`` when coordinates beyond
    the truncation do not contribute; otherwise (degree ``i - 1 = 1`` with
    Sylow subgroups of order ``p``) from the fixed-point quotient towers.
    """
    f = cp.family(family)
    if i < 1:
        raise ValueError("degree must be at least 1")
    if isinstance(f, cp.FiniteFamily):
        return _ses_finite(f, i, N_max)
    Ti = lambda_tower(f, i, N_max)
    if any(Ti.meta["tail"]):
        raise CertificateError(f"degree {i} tower sees coordinates beyond the window")
    cert_i = certify(Ti, STABILIZING)
    lim_desc, lim_dim = _lim_description(Ti, cert_i, f)
    Tprev = lambda_tower(f, i - 1, N_max)
    if not any(Tprev.meta["tail"]):
        lim1 = classify_lim1(Tprev, certify(Tprev, STABILIZING))
        lim1["route"] = "finite-dimensional tower"
    elif i - 1 == 1:
        A, B = sylow_quotient_towers(f, N_max)
        cert_A = certify(A, STABILIZING)
        if cert_A.law.a != 0:
            raise CertificateError("Fix_S/Fix_K tower does not stabilize")
        src = _countable_source(source_law(f, N_max, _sylow))
        cert_B = certify(B, UNBOUNDED_QUOTIENT)
        lim1 = classify_lim1(B, cert_B, src)
        lim1["route"] = "coker[lim Fix_S/Fix_K -> lim Fix_S/Fix_N(S)]"
        lim1["stable_source_tower"] = A.as_dict()
    else:
        raise CertificateError("no certificate route for this degree")
    lim1_zero = lim1["classification"] == "ZERO"
    if lim1_zero:
        prediction = lim_desc
    elif lim_desc == "0":
        prediction = "nonzero (lim^1 term)"
    else:
        prediction = f"nonzero extension of {lim_desc}"
    return {"family": cp.family_id(f), "degree": i,
            "lim": {"description": lim_desc, "dimension": lim_dim, "tower": Ti.as_dict(),
                    "certificate": {"kind": cert_i.kind, "law": str(cert_i.law),
                                    "surjective": cert_i.surjective}},
            "lim1": lim1, "prediction": prediction, "extrapolation": EXTRAPOLATION_TAG}


def _ses_finite(f, i, N_max):
    from .lambdas import lambda_
    T = lambda_tower(f, i, N_max, cross_check=False, tail_check=False)
    direct = lambda_(f.group, f.p, f.module, i + 1).dims[i]
    ok = all(d == direct for d in T.dims) and all(
        fp.rank(A, f.p) == direct for A in T.maps)
    return {"family": f.name, "degree": i, "lim": {"dimension": T.dims[-1], "tower": T.as_dict()},
            "lim1": {"classification": "ZERO", "reason": "the poset has a maximum"},
            "direct": direct, "pass": ok, "prediction": f"finite of dimension {direct}",
            "extrapolation": EXTRAPOLATION_TAG}


def shortcut_compatibility(family, N_max):
    """Degree-1 maps against ``Fix_{N_K(S)} M / Fix_K M`` under the module projection.

    Returns per window step the rank of the Lambda^1 structure map and the
    rank of the projection between the fixed-point quotients.
    """
    chain = fin_truncation_chain(family, N_max)
    T = lambda_tower(family, 1, N_max, method="resolution", cross_check=False,
                     tail_check=False)
    p = chain.p
    quots = []
    for n, (K, M) in enumerate(zip(chain.groups, chain.modules)):
        NS = _sylow_normalizer(K, chain, n)
        quots.append(fp.quotient_coordinates(M.fixed_points(K.whole()), M.fixed_points(NS), p))
    out = []
    for n in range(chain.top):
        reps, _ = quots[n + 1]
        _, coords = quots[n]
        if reps.shape[1] and quots[n][0].shape[1]:
            img = fp.matmul(chain.projections[n], reps, p)
            r = fp.rank(coords(img), p)
        else:
            r = 0
        out.append({"step": f"{n + 1}->{n}", "lambda_rank": fp.rank(T.maps[n], p),
                    "shortcut_rank": r, "dims": (T.dims[n], T.dims[n + 1]),
                    "shortcut_dims": (quots[n][0].shape[1], quots[n + 1][0].shape[1])})
    return out
