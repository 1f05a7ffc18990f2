"""Verification suites binding the theorems to executable checks.

Every suite returns a list of instance records ``{"instance", "expected",
"got", "pass", ...}``; ``run_suite`` wraps them in a JSON-ready report with
timings.  Expected values never come from the code path under test: they
are dimensions read off the input, fixed-point counts, or independent
routes (bar complex against resolution or shortcut).
"""
from __future__ import annotations

import time
from functools import lru_cache

from . import corpus as cp
from . import groups as grp
from . import orbitcat as oc
from .barlim import higher_limits
from .gmodules import (FpGModule, atomic_functor, coinduced_functor, constant_functor,
                       fixedpoint_functor, permutation_module, restrict_functor,
                       trivial_module)
from .lambdas import (lambda_, lambda1_sylow_order_p, reduction_sides, vanishing_bound_check,
                      centralizer_vanishing_check)


# --- the finite corpus ---------------------------------------------------------------


def sign(g):
    return (-1) ** sum(len(c) - 1 for c in g.cycles())


def sign_module(G, p):
    return FpGModule.from_function(G, p, 1, lambda g: [[sign(g) % p]], name="sign")


def alternating4():
    return grp.PermGroup([grp.Perm.from_cycles([(0, 1, 2)], 4),
                          grp.Perm.from_cycles([(0, 1), (2, 3)], 4)], name="A4")


def _pulled(prod, i, M):
    """Module over a direct product through the projection to factor ``i``."""
    G = prod.group
    hom = grp.Homomorphism(G, prod.factors[i], [prod.project(i, g) for g in G.generators])
    return M.pullback(G, hom)


@lru_cache(maxsize=None)
def groups():
    """Named finite groups of the corpus."""
    out = {
        "C2": grp.cyclic_group(2), "C3": grp.cyclic_group(3), "C6": grp.cyclic_group(6),
        "S3": grp.symmetric_group(3), "S4": grp.symmetric_group(4), "A4": alternating4(),
        "D4": grp.dihedral_group(4), "D5": grp.dihedral_group(5),
    }
    for name, f, n in [("Gamma0_2", "hgm-gamma0", 2), ("H_1", "hgm-h", 1),
                       ("H0_2", "hgm-h0", 2), ("Gamma_1", "hgm-gamma", 1),
                       ("Gamma*_1", "hgm-gamma*", 1)]:
        out[name] = cp.hgm_truncate(cp.family(f), n)[0]
    D5 = out["D5"]
    out["C2xD5"] = grp.DirectProduct(out["C2"], D5).group
    out["D5xD5"] = grp.DirectProduct(D5, D5).group
    out["P1"] = cp.wreath_tower(2, 1).P[1]
    out["P2"] = cp.wreath_tower(2, 2).P[2]
    out["P1(p=3)"] = cp.wreath_tower(3, 1).P[1]
    return out


@lru_cache(maxsize=None)
def finite_corpus():
    """``(name, G, p, M)`` instances used by the Lambda suites."""
    G = groups()
    out = []

    def add(gname, p, M):
        out.append((f"{gname}/p={p}/{M.name}", G[gname], p, M))

    for gname in ("S3", "S4", "A4", "D4", "C6"):
        for p in (2, 3):
            H = G[gname]
            if H.order() % p:
                continue
            add(gname, p, trivial_module(H, p))
            add(gname, p, permutation_module(H, p))
            if p == 3 and gname in ("S3", "S4"):
                add(gname, p, sign_module(H, p))
    for gname, p in (("C2", 2), ("C3", 3), ("D5", 2), ("D5", 5)):
        add(gname, p, trivial_module(G[gname], p))
    D5, M16 = cp.hgm_truncate(cp.family("hgm-gamma0"), 1)
    M16.name = "F16"
    out.append(("D5/p=2/F16", D5, 2, M16))
    K, M = cp.hgm_truncate(cp.family("hgm-gamma0"), 2)
    M.name = "F16^2"
    out.append(("Gamma0_2/p=2/F16^2", K, 2, M))
    out.append(("Gamma0_2/p=2/F2", K, 2, trivial_module(K, 2)))
    prod = grp.DirectProduct(G["C2"], D5)
    Mp = _pulled(prod, 1, M16)
    Mp.name = "F16"
    out.append(("C2xD5/p=2/F16", prod.group, 2, Mp))
    return out


def _record(instance, expected, got, **extra):
    return {"instance": instance, "expected": expected, "got": got,
            "pass": expected == got, **extra}


# --- suites ----------------------------------------------------------------------------


def suite_icM_acyclic():
    """Coinduced functors: ``lim^0 = dim M0`` and ``lim^{1..3} = 0``."""
    G = groups()
    out = []
    for gname, p in (("S3", 2), ("S3", 3), ("S4", 2), ("S4", 3), ("D5", 2), ("C6", 2),
                     ("C6", 3)):
        C = oc.p_orbit_category(G[gname], p)
        for c in range(C.n_objects):
            for m0 in (1, 2):
                if m0 == 2 and c:
                    continue
                Phi = coinduced_functor(C, c, m0, p)
                got = higher_limits(C, Phi, 4).dims
                out.append(_record(f"{gname}/p={p}/c={c}/m0={m0}", [m0, 0, 0, 0], got))
    return out


def suite_op_vanishing():
    """``Lambda^{0..3} = 0`` whenever ``O_p(G) != 1``."""
    out = []
    for name, G, p, M in finite_corpus():
        if grp.op_subgroup(G, p).order() == 1:
            continue
        res = lambda_(G, p, M, 4)
        out.append(_record(name, [0, 0, 0, 0], res.dims, provenance=res.provenance))
    return out


def _reduction_instances():
    G = groups()
    S3, S4, D5 = G["S3"], G["S4"], G["D5"]
    out = []
    for name, H, p, Q, mod in [
        ("S3/p=3/Q=C3", S3, 3, grp.sylow_p(S3, 3), "trivial"),
        ("S3/p=3/Q=C3/sign", S3, 3, grp.sylow_p(S3, 3), "sign"),
        ("S4/p=2/Q=V4", S4, 2, grp.op_subgroup(S4, 2), "trivial"),
        ("S4/p=3/Q=C3", S4, 3, grp.sylow_p(S4, 3), "trivial"),
        ("D5/p=2/Q=C2", D5, 2, grp.sylow_p(D5, 2), "trivial"),
        ("S3/p=2/Q=C2", S3, 2, grp.sylow_p(S3, 2), "trivial"),
    ]:
        X = grp.p_subgroups(H, p)
        NQ = grp.normalizer(H, Q)
        V = trivial_module(NQ, p) if mod == "trivial" else sign_module(NQ, p)
        out.append((name, H, X, Q, V))
    return out


def suite_reduction():
    """Both sides of the reduction theorem agree in degrees 0..2."""
    out = []
    for name, H, X, Q, V in _reduction_instances():
        lhs, rhs, _ = reduction_sides(H, X, Q, V, 3)
        out.append(_record(name, lhs, rhs))
    return out


def suite_sylow_order_p():
    """``Lambda^*(D5; F16)`` by the bar complex and by the order-p Sylow formula."""
    D5, M = cp.hgm_truncate(cp.family("hgm-gamma0"), 1)
    bar = lambda_(D5, 2, M, 4, method="bar")
    short = lambda1_sylow_order_p(D5, 2, M, 4)
    return [_record("D5/p=2/F16/bar", [0, 2, 0, 0], bar.dims, provenance=bar.provenance),
            _record("D5/p=2/F16/shortcut", bar.dims, short.dims, provenance=short.provenance)]


def _s4_functors():
    S4 = groups()["S4"]
    C = oc.OrbitCategory(S4, grp.p_subgroups(S4, 2))
    out = []
    for M in (trivial_module(S4, 2), permutation_module(S4, 2)):
        out.append((f"atomic({M.name})", atomic_functor(C, M)))
        out.append((f"fixed-point({M.name})", fixedpoint_functor(C, M)))
    out.append(("constant(1)", constant_functor(C, 1, 2)))
    for c in range(C.n_objects):
        if C.objects[c].order() >= 4:
            out.append((f"coinduced({c})", coinduced_functor(C, c, 1, 2)))
    return C, out


def suite_cofinality():
    """Restriction to the subgroups containing ``O_2(S4)`` preserves higher limits."""
    C, functors = _s4_functors()
    O = grp.op_subgroup(C.group, 2).element_set
    X0 = [i for i, P in enumerate(C.objects) if O <= P.element_set]
    out = []
    for name, Phi in functors:
        full = higher_limits(C, Phi, 3).dims
        R = restrict_functor(Phi, X0)
        out.append(_record(name, full, higher_limits(R.category, R, 3).dims,
                           objects=[C.n_objects, len(X0)]))
    return out


def suite_fixed_point_acyclic():
    """``lim^0 (P -> Fix_P M) = dim Fix_G M`` and higher limits vanish."""
    G = groups()
    D5, M16 = cp.hgm_truncate(cp.family("hgm-gamma0"), 1)
    cases = [("S4", 2, permutation_module(G["S4"], 2)), ("S4", 2, trivial_module(G["S4"], 2)),
             ("S3", 3, permutation_module(G["S3"], 3)), ("S3", 2, permutation_module(G["S3"], 2)),
             ("S4", 3, permutation_module(G["S4"], 3)), (D5, 2, M16),
             ("A4", 2, permutation_module(G["A4"], 2))]
    out = []
    for gname, p, M in cases:
        H = G[gname] if isinstance(gname, str) else gname
        C = oc.p_orbit_category(H, p)
        got = higher_limits(C, fixedpoint_functor(C, M), 4).dims
        fix = M.fixed_dim(H.whole())
        out.append(_record(f"{H.name}/p={p}/{M.name}", [fix, 0, 0, 0], got))
    return out


def suite_centralizer_vanishing():
    """``Lambda^* = 0`` when ``C_G(M)`` has an element of order ``p``."""
    out = []
    for name, G, p, M in finite_corpus():
        r = centralizer_vanishing_check(G, p, M, 4)
        if r["applicable"]:
            out.append(_record(name, [0, 0, 0, 0], r["dims"], provenance=r["provenance"]))
    return out


def suite_vanishing_bound():
    """``Lambda^i = 0`` above the Sylow exponent."""
    out = []
    for name, G, p, M in finite_corpus():
        r = vanishing_bound_check(G, p, M, 4)
        n = r["sylow_exponent"]
        out.append(_record(name, [0] * len(r["dims"][n + 1:]), r["dims"][n + 1:],
                           sylow_exponent=n, dims=r["dims"]))
    return out


def suite_towers():
    """Gamma_0 Lambda^1 tower dims ``2n``, the Gamma_0 and Gamma_* SES reports."""
    from . import towers as tw
    T = tw.lambda_tower("hgm-gamma0", 1, 3)
    out = [_record("gamma0/Lambda1/dims", [2 * n for n in range(4)], T.dims,
                   provenance=T.meta.get("provenance")),
           _record("gamma0/Lambda1/surjective", [True] * 3, T.surjective()),
           _record("gamma0/Lambda1/tail", [0] * 4, list(T.meta["tail"]))]
    r = tw.ses_check_countable("hgm-gamma0", 1, 3)
    out.append(_record("gamma0/ses/lim", "product of F0 coordinates", r["lim"]["description"],
                       certificate=r["lim"]["certificate"]))
    out.append(_record("gamma0/ses/lim1", "ZERO", r["lim1"]["classification"]))
    r = tw.ses_check_countable("hgm-gamma*", 2, 2)
    out.append(_record("gamma*/ses/lim1", "NONZERO", r["lim1"]["classification"],
                       route=r["lim1"]["route"], extrapolation=r["extrapolation"]))
    out.append(_record("gamma*/ses/prediction", "nonzero (lim^1 term)", r["prediction"]))
    return out


def spectral_pages():
    """``(name, page, abutment)`` for the consistency suite."""
    from . import spectral as sp
    G = groups()
    C4 = grp.cyclic_group(4)
    C2 = grp.generated(C4, [C4.generators[0] ** 2])
    out = []
    T = trivial_module(C4, 2)
    out.append(("LHS C4/C2", sp.lhs_page(C4, C2, T, 4), sp.group_cohomology(C4, T, 4)))
    S3 = G["S3"]
    T = trivial_module(S3, 2)
    out.append(("LHS S3/C3", sp.lhs_page(S3, grp.sylow_p(S3, 3), T, 4),
                sp.group_cohomology(S3, T, 4)))
    out.append(("LHS S3/S3", sp.lhs_page(S3, S3, T, 4), sp.group_cohomology(S3, T, 4)))
    S4 = G["S4"]
    T = trivial_module(S4, 2)
    out.append(("Lambda S4/V4", sp.e2_lambda_quotient(S4, grp.op_subgroup(S4, 2), 2, T, 3),
                lambda_(S4, 2, T, 3).dims))
    D5, M16 = cp.hgm_truncate(cp.family("hgm-gamma0"), 1)
    ab = lambda_(D5, 2, M16, 3).dims
    out.append(("Lambda D5/D5", sp.e2_lambda_quotient(D5, D5, 2, M16, 3), ab))
    out.append(("Lambda D5/1", sp.e2_lambda_quotient(D5, D5.trivial_subgroup(), 2, M16, 3), ab))
    prod = grp.DirectProduct(G["C2"], D5)
    M = _pulled(prod, 1, M16)
    C5 = grp.sylow_p(prod.factor_subgroup(1), 5)
    out.append(("Lambda C2xD5/C5", sp.e2_lambda_quotient(prod.group, C5, 2, M, 3),
                lambda_(prod.group, 2, M, 3).dims))
    prod = grp.DirectProduct(D5, D5)
    MM = M16.tensor(M16, prod)
    out.append(("product D5xD5", sp.e2_product(prod, 2, MM, 3), lambda_(prod.group, 2, MM, 3).dims))
    prod = grp.DirectProduct(D5, G["C3"])
    M = _pulled(prod, 0, M16)
    out.append(("product D5xC3", sp.e2_product(prod, 2, M, 3), lambda_(prod.group, 2, M, 3).dims))
    return out


def suite_spectral():
    """``convergence_check`` on every page; the LHS C4/C2 and D5xD5 values."""
    from . import spectral as sp
    out = []
    for name, page, ab in spectral_pages():
        rep = sp.convergence_check(page, ab, strict=False)
        checks = page.meta.get("choice_checks", [])
        out.append({"instance": name, "grid": page.grid, "abutment": list(ab),
                    "forced_collapse": rep["forced_collapse"], "euler": rep["euler"],
                    "choice_checks": len(checks),
                    "pass": rep["pass"] and all(c["agree"] for c in checks)})
        if name == "LHS C4/C2":
            out.append(_record("LHS C4/C2 grid", [[1] * 4] * 4, page.grid))
            out.append(_record("LHS C4/C2 abutment", [1] * 4, list(ab)))
        if name == "product D5xD5":
            out.append(_record("product D5xD5 E2^{1,1}", 4, page[1, 1]))
            out.append(_record("product D5xD5 abutment degree 2", 4, ab[2]))
    return out


def suite_wreath():
    """Stage checks of the wreath tower: p = 2 through stage 2 plus stage 3, p = 3 stage 1."""
    out = []
    for p, n_max, stages, targeted in ((2, 3, [0, 1, 2], [3]), (3, 1, [0, 1], [])):
        T = cp.wreath_tower(p, n_max)
        for r in cp.wreath_checks(T, stages=stages, targeted=targeted):
            info = {k: v for k, v in r.items() if k not in ("stage", "check", "pass")}
            out.append({"instance": f"p={p}/stage {r['stage']}/{r['check']}", "pass": r["pass"],
                        **info})
    return out


def suite_category_laws(max_order=200, full_objects=64):
    """Category laws and epimorphisms on the orbit categories of corpus groups.

    Every ``O_p(G)`` skeleton is checked, and the full category as well when
    it has at most ``full_objects`` objects.
    """
    out = []
    for gname, G in groups().items():
        if G.order() > max_order:
            continue
        n = G.order()
        for p in sorted({q for q in range(2, n + 1) if n % q == 0 and grp.is_prime(q)}):
            full = oc.OrbitCategory(G, grp.p_subgroups(G, p))
            cats = [("skeleton", oc.skeleton(full))]
            if full.n_objects <= full_objects:
                cats.append(("full", full))
            for kind, C in cats:
                r = oc.law_report(C)
                out.append({"instance": f"{gname}/O_{p}/{kind}", **r})
    return out


SUITES = {
    "icM-acyclic": suite_icM_acyclic,
    "op-vanishing": suite_op_vanishing,
    "reduction": suite_reduction,
    "sylow-order-p": suite_sylow_order_p,
    "cofinality": suite_cofinality,
    "fixed-point-acyclic": suite_fixed_point_acyclic,
    "centralizer-vanishing": suite_centralizer_vanishing,
    "vanishing-bound": suite_vanishing_bound,
    "towers": suite_towers,
    "spectral": suite_spectral,
    "wreath": suite_wreath,
    "category-laws": suite_category_laws,
}


def run_suite(name):
    """Run a registered suite; failures and unknown ids are reported, never raised."""
    t0 = time.perf_counter()
    if not name or name not in SUITES:
        return {"suite": name, "pass": False,
                "error": f"unknown suite id {name!r}; known: {sorted(SUITES)}",
                "count": 0, "failures": [], "instances": [], "timings": {"total_s": 0.0}}
    try:
        records = SUITES[name]()
        error = None
    except Exception as exc:   # failures are data
        records, error = [], f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    ok = error is None and bool(records) and all(r["pass"] for r in records)
    rep = {"suite": name, "pass": ok, "count": len(records),
           "failures": [r["instance"] for r in records if not r["pass"]],
           "instances": records, "timings": {"total_s": round(dt, 3)}}
    if error:
        rep["error"] = error
    return rep
