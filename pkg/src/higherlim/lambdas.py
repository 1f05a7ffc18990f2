"""Lambda functors of finite groups, their shortcuts, and the reduction theorem."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import groups as grp
from . import orbitcat as oc
from .barlim import DEFAULT_N, higher_limits, lim0_direct
from .complexes import BAR_COMPLEX
from .gmodules import CatModule, FpGModule, atomic_functor

SHORTCUT_OP = "SHORTCUT_OP"
SHORTCUT_SYLOW_P = "SHORTCUT_SYLOW_P"


@dataclass
class LambdaResult:
    dims: list
    provenance: list
    extra: dict = field(default_factory=dict)

    @property
    def window(self):
        return (0, len(self.dims) - 1)

    def as_dict(self):
        return {"dims": list(self.dims), "provenance": list(self.provenance),
                "window": list(self.window)}


def _limits_result(res):
    return LambdaResult(list(res.dims), [res.method] * len(res.dims), {"limits": res})


def lambda_category(G, p, skeletal=True):
    return oc.p_orbit_category(G, p, skeletal=skeletal)


def lambda_(G, p, M, N=DEFAULT_N, method="auto", shortcuts=False):
    """``Lambda^*(G; M)`` for ``0 <= * <= N - 1``.

    With ``shortcuts`` the O_p-vanishing and order-p Sylow formulas are used
    when they apply; otherwise the category computation always runs.
    """
    if shortcuts:
        r = shortcut_Op_vanishing(G, p, M, N)
        if r is not None:
            return r
        if grp.sylow_p(G, p).order() == p:
            return lambda1_sylow_order_p(G, p, M, N)
    C = lambda_category(G, p)
    return _limits_result(higher_limits(C, atomic_functor(C, M), N, method))


def lambda_X(G, X, M, N=DEFAULT_N, method="auto"):
    """Higher limits of ``F_M`` over ``O_X(G)`` (``X`` must contain the trivial subgroup)."""
    if not any(H.order() == 1 for H in X):
        raise ValueError("the object set must contain the trivial subgroup")
    p = M.p
    for H in X:
        if grp.p_part(H.order(), p) != H.order():
            raise ValueError("objects must be p-subgroups")
    C = oc.skeleton(oc.OrbitCategory(G, X))
    return _limits_result(higher_limits(C, atomic_functor(C, M), N, method))


def group_cohomology(G, M, N=DEFAULT_N, method="auto"):
    """``H^*(G; M)`` as higher limits over the one-object category."""
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    return higher_limits(C, atomic_functor(C, M), N, method)


def shortcut_Op_vanishing(G, p, M, N=DEFAULT_N):
    """All-zero result when ``O_p(G) != 1``, else ``None``."""
    if grp.op_subgroup(G, p).order() > 1:
        return LambdaResult([0] * N, [SHORTCUT_OP] * N)
    return None


def lambda1_sylow_order_p(G, p, M, N=DEFAULT_N):
    """``Lambda^1 = dim Fix_{N_G(S)} M - dim Fix_G M`` when ``|S| = p``; other degrees 0."""
    S = grp.sylow_p(G, p)
    if S.order() != p:
        raise ValueError(f"Sylow {p}-subgroup has order {S.order()}, not {p}")
    NS = grp.normalizer(G, S)
    l1 = M.fixed_dim(NS) - M.fixed_dim(G.whole())
    dims = [0, l1] + [0] * (N - 2)
    prov = [BAR_COMPLEX if N else None] + [SHORTCUT_SYLOW_P] * (N - 1)
    # degree 0 from the direct limit computation (it vanishes since S != 1)
    C = lambda_category(G, p)
    dims[0] = lim0_direct(C, atomic_functor(C, M))[0]
    prov[0] = "LIM0_DIRECT"
    return LambdaResult(dims[:N], prov[:N])


# --- reduction theorem -------------------------------------------------------------


@dataclass
class Reduction:
    quotient: grp.QuotientGroup
    normalizer: grp.Subgroup
    Y: list
    module: FpGModule

    @property
    def group(self):
        return self.quotient.group


def atomic_at(C, q, V, act):
    """Functor supported on the conjugacy class of object ``q`` with value ``V``.

    ``act(g)`` is the matrix of ``g`` in ``N_G(Q)`` on ``V`` (a left action).
    Fix transporters ``t_R`` with ``t_R R t_R^-1 = Q`` for each ``R`` in the
    class. A morphism ``[g]: R' -> R''`` goes to ``act(n^-1)`` where
    ``n = t_R'' g t_R'^-1`` lies in ``N_G(Q)``.
    """
    G = C.group
    Q = C.objects[q]
    cls = next(c for c in C.conjugacy_classes if q in c)
    trans = {}
    for i in cls:
        R = C.objects[i]
        trans[i] = next(t for t in G.elements if R.conjugate(t) == Q)
    dims = [V.dim if i in trans else 0 for i in range(C.n_objects)]

    def rule(f):
        n = trans[f.target] * f.rep * trans[f.source].inverse()
        return act(n.inverse())

    return CatModule(C, V.p, dims, rule, name="atomic-class")


def reduce_atomic(G, X, Q, V):
    """Data for ``lim_{O_X(G)} Phi = Lambda_Y(N_G(Q)/Q; Phi(Q))``.

    ``V`` is an ``F_p``-module over ``N_G(Q)`` (with ``Q`` acting trivially)
    giving ``Phi(Q)``.  Returns the quotient group, the object set
    ``Y = {P/Q : Q normal in P in X}`` and ``V`` as a quotient module.
    """
    Xs = grp.conjugation_closure(G, X)
    xsets = {H.element_set for H in Xs}
    Q = grp.as_subgroup(G, Q)
    if Q.element_set not in xsets:
        raise ValueError("Q is not in X")
    # closure hypothesis: Q <= P in X implies N_P(Q) in X
    for P in Xs:
        if Q.element_set <= P.element_set:
            NPQ = grp.intersection(G, grp.normalizer(G, Q), P)
            if NPQ.element_set not in xsets:
                raise ValueError("closure hypothesis fails: N_P(Q) is not in X")
    NQ = grp.normalizer(G, Q)
    if V.group != NQ:
        raise ValueError("V must be a module over N_G(Q)")
    if not all(V.acts_trivially(q) for q in Q.generators):
        raise ValueError("Q must act trivially on V")
    quo = grp.quotient(NQ, grp.as_subgroup(NQ, Q))
    Qbar = quo.group
    Y, seen = [], set()
    for P in Xs:
        if Q.element_set <= P.element_set and grp.is_normal(P, Q):
            img = quo.image(grp.as_subgroup(NQ, P))
            if img.element_set not in seen:
                seen.add(img.element_set)
                Y.append(img)
    Vbar = FpGModule.from_function(Qbar, V.p, V.dim, lambda x: V.matrix(quo.lift(x)),
                                   name=V.name)
    return Reduction(quo, NQ, Y, Vbar)


def reduction_sides(G, X, Q, V, N=3, method="auto"):
    """Both sides of the reduction theorem: ``(lim over O_X(G), Lambda_Y(...))``."""
    C = oc.OrbitCategory(G, X)
    q = C.position(Q)
    Phi = atomic_at(C, q, V, V.matrix)
    S = oc.skeleton(C)
    Phi_s = Phi.pullback(oc.inclusion_functor(S, C)) if S is not C else Phi
    lhs = higher_limits(S, Phi_s, N, method)
    red = reduce_atomic(G, X, Q, V)
    rhs = lambda_X(red.group, red.Y, red.module, N, method)
    return lhs.dims, rhs.dims, red


# --- vanishing theorems -------------------------------------------------------------


def centralizer_vanishing_check(G, p, M, N=DEFAULT_N, method="auto"):
    """If ``C_G(M)`` has an element of order ``p`` then ``Lambda^*(G; M) = 0``."""
    CM = grp.centralizer_of_module(G, M)
    witness = next((g for g in CM.elements if g.order() == p), None)
    if witness is None:
        return {"applicable": False, "status": "not applicable"}
    res = lambda_(G, p, M, N, method)
    ok = not any(res.dims)
    return {"applicable": True, "witness": witness.cycles(), "dims": res.dims,
            "provenance": res.provenance, "pass": ok}


def vanishing_bound_check(G, p, M, N=DEFAULT_N, method="auto"):
    """``Lambda^i(G; M) = 0`` for ``n < i <= N - 1`` where ``|Sylow_p| = p^n``."""
    S = grp.sylow_p(G, p)
    n = 0
    while p ** n < S.order():
        n += 1
    res = lambda_(G, p, M, N, method)
    bad = [i for i in range(n + 1, N) if res.dims[i]]
    return {"sylow_exponent": n, "dims": res.dims, "provenance": res.provenance,
            "pass": not bad, "violations": bad}
