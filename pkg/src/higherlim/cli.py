"""Command-line front end: declarative job specs in, JSON reports out.

    higherlim lambda --group S3 --p 3 --module trivial1 --N 4
    higherlim corpus --family hgm-gamma0 --truncate 2 --op lambda --N 3
    higherlim describe

Reports go to ``--out`` (a human-readable summary then goes to stdout) or to
stdout.  Report bodies are deterministic; wall-clock numbers live under
``"timings"`` only.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

import numpy as np

from . import __version__
from . import corpus as cp
from . import groups as grp
from . import orbitcat as oc
from .gmodules import (FpGModule, atomic_functor, coinduced_functor, constant_functor,
                       fixedpoint_functor, permutation_module, trivial_module)

SCHEMA = "higherlim-report/1"
COMMANDS = ("lambda", "higher-limits", "tower", "spectral", "cohomology", "verify", "corpus")
EXIT_OK, EXIT_SPEC, EXIT_FAILURE = 0, 2, 3


class SpecError(ValueError):
    """A malformed job spec; ``field`` names the offending input."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


# --- groups ---------------------------------------------------------------------------


def _split_args(text):
    """Top-level comma split (parentheses nest)."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_group(text):
    """Group from a name, a generator list, a construction or a family level.

    ``S4``, ``A4``, ``C6``, ``D5``;  ``gens:(0 1 2);(0 1)`` (0-indexed cycles,
    optional ``@degree``);  ``direct(G,H)``, ``wreath(G,p)``,
    ``semidirect(Cn,Cm,k)`` (generator of ``C_m`` acting by ``x -> x^k``);
    ``hgm-gamma0@2`` (a corpus family at a truncation level).
    """
    if not text:
        raise SpecError("group", "empty description")
    text = text.strip()
    m = re.fullmatch(r"(\w+)\((.*)\)", text)
    if m and m.group(1) in ("direct", "wreath", "semidirect"):
        head, args = m.group(1), _split_args(m.group(2))
        if head == "direct":
            if len(args) != 2:
                raise SpecError("group", "direct(G,H) takes two groups")
            return grp.direct_product(parse_group(args[0]), parse_group(args[1])).group
        if head == "wreath":
            if len(args) != 2 or not args[1].isdigit():
                raise SpecError("group", "wreath(G,p) takes a group and a prime")
            return grp.wreath_Cp(parse_group(args[0]), int(args[1])).group
        if len(args) != 3 or not re.fullmatch(r"C\d+", args[0]) or not re.fullmatch(r"C\d+", args[1]):
            raise SpecError("group", "semidirect(Cn,Cm,k) takes two cyclic groups and an exponent")
        N, S = parse_group(args[0]), parse_group(args[1])
        try:
            k = int(args[2])
        except ValueError:
            raise SpecError("group", f"bad exponent {args[2]!r}") from None
        x = N.generators[0]
        try:
            return grp.semidirect(N, S, {S.generators[0]: {x: x ** k}}).group
        except ValueError as exc:
            raise SpecError("group", str(exc)) from None
    if text.startswith("gens:"):
        body, _, deg = text[5:].partition("@")
        gens = [g for g in body.split(";") if g.strip()]
        try:
            cyc = [grp.parse_cycles(g) for g in gens]
        except ValueError as exc:
            raise SpecError("group", str(exc)) from None
        pts = [x for c in cyc for cy in c for x in cy]
        n = int(deg) if deg else (max(pts) + 1 if pts else 1)
        if pts and max(pts) >= n:
            raise SpecError("group", "a cycle moves a point beyond the degree")
        return grp.PermGroup([grp.Perm.from_cycles(c, n) for c in cyc], degree=n, name=text)
    if "@" in text:
        return _family_level(text)[0]
    m = re.fullmatch(r"([SCD])(\d+)", text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1 or (kind == "D" and n < 3):
            raise SpecError("group", f"bad size in {text!r}")
        return {"S": grp.symmetric_group, "C": grp.cyclic_group, "D": grp.dihedral_group}[kind](n)
    from .suites import groups
    named = groups()
    if text in named:
        return named[text]
    raise SpecError("group", f"cannot parse {text!r}")


def _family_level(text):
    name, _, level = text.partition("@")
    try:
        f = cp.family(name)
    except ValueError as exc:
        raise SpecError("family", str(exc)) from None
    if not level.isdigit():
        raise SpecError("truncate", f"bad level {level!r}")
    T = cp.truncation(f, int(level))
    return T.group, T.module, f


# --- modules and functors ----------------------------------------------------------------


def parse_module(text, G, p, family_module=None):
    """``trivial<d>``, ``perm``, ``sign``, ``hgm`` (family module) or ``mats:<json>``."""
    if not text:
        raise SpecError("module", "empty description")
    m = re.fullmatch(r"trivial(\d*)", text)
    if m:
        return trivial_module(G, p, int(m.group(1) or 1))
    if text == "perm":
        return permutation_module(G, p)
    if text == "sign":
        from .suites import sign_module
        return sign_module(G, p)
    if text == "hgm":
        if family_module is None:
            raise SpecError("module", "'hgm' needs a family group (e.g. hgm-gamma0@1)")
        if family_module.p != p:
            raise SpecError("p", f"the family module is over F_{family_module.p}")
        return family_module
    if text.startswith("mats:"):
        try:
            mats = json.loads(text[5:])
        except json.JSONDecodeError as exc:
            raise SpecError("module", f"bad JSON: {exc}") from None
        if len(mats) != len(G.generators):
            raise SpecError("module", f"need {len(G.generators)} matrices, one per generator")
        try:
            return FpGModule(G, p, [np.array(A, dtype=np.int64) for A in mats], name="matrices")
        except ValueError as exc:
            raise SpecError("module", str(exc)) from None
    raise SpecError("module", f"cannot parse {text!r}")


def parse_objects(text, G, p):
    """``all-p``, ``containing(Q)`` (Q a generator list) or ``[(..);(..) | ...]`` subgroups."""
    allp = grp.p_subgroups(G, p)
    if text in (None, "", "all-p"):
        return allp
    m = re.fullmatch(r"containing\((.*)\)", text)
    if m:
        Q = _subgroup(G, m.group(1), "objects")
        return [P for P in allp if Q.element_set <= P.element_set]
    if text.startswith("[") and text.endswith("]"):
        return [_subgroup(G, s, "objects") for s in text[1:-1].split("|") if s.strip()]
    raise SpecError("objects", f"cannot parse {text!r}")


def _subgroup(G, text, field):
    gens = []
    for g in text.split(";"):
        if not g.strip():
            continue
        try:
            gens.append(grp.Perm.from_cycles(grp.parse_cycles(g), G.degree))
        except ValueError as exc:
            raise SpecError(field, str(exc)) from None
    if any(g not in G for g in gens):
        raise SpecError(field, "generator outside the group")
    return grp.generated(G, gens) if gens else G.trivial_subgroup()


def parse_functor(text, C, M):
    text = text or "atomic"
    if text == "atomic":
        return atomic_functor(C, M)
    if text == "fixed-point":
        return fixedpoint_functor(C, M)
    m = re.fullmatch(r"coinduced\((\d+)\)", text)
    if m:
        c = int(m.group(1))
        if c >= C.n_objects:
            raise SpecError("functor", f"object {c} out of range (0..{C.n_objects - 1})")
        return coinduced_functor(C, c, M.dim, M.p)
    m = re.fullmatch(r"constant\((\d+)\)", text)
    if m:
        return constant_functor(C, int(m.group(1)), M.p)
    raise SpecError("functor", f"cannot parse {text!r}")


def _prime(p):
    if p is None or not grp.is_prime(p):
        raise SpecError("p", f"{p!r} is not a prime")
    return p


def _N(N):
    if N is None or N < 1:
        raise SpecError("N", "must be a positive integer")
    return N


def _group_and_module(args):
    p = _prime(args.p)
    fam_mod = None
    if args.group and "@" in args.group and not args.group.startswith("gens:"):
        G, fam_mod, _ = _family_level(args.group)
    else:
        G = parse_group(args.group)
    if G.order() > grp.ENUMERATION_BOUND:
        raise SpecError("group", f"order {G.order()} exceeds the enumeration bound")
    return G, p, parse_module(args.module, G, p, fam_mod)


# --- commands --------------------------------------------------------------------------


def _dims_block(dims, provenance):
    prov = provenance if isinstance(provenance, list) else [provenance] * len(dims)
    return {"dims": [int(d) for d in dims], "provenance": prov, "window": [0, len(dims) - 1]}


def cmd_lambda(args):
    from .lambdas import lambda_
    G, p, M = _group_and_module(args)
    res = lambda_(G, p, M, _N(args.N), args.method, shortcuts=not args.no_shortcuts)
    return _dims_block(res.dims, res.provenance)


def cmd_higher_limits(args):
    from .barlim import higher_limits
    G, p, M = _group_and_module(args)
    X = parse_objects(args.objects, G, p)
    C = oc.skeleton(oc.OrbitCategory(G, X))
    Phi = parse_functor(args.functor, C, M)
    res = higher_limits(C, Phi, _N(args.N), args.method)
    return {**_dims_block(res.dims, res.method), "objects": C.n_objects, "functor": Phi.name}


def cmd_cohomology(args):
    from .barlim import higher_limits
    G, p, M = _group_and_module(args)
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    res = higher_limits(C, atomic_functor(C, M), _N(args.N), args.method)
    return _dims_block(res.dims, res.method)


def cmd_tower(args):
    from . import towers as tw
    if args.degree is None or args.degree < 0:
        raise SpecError("degree", "must be a nonnegative integer")
    if args.N_max is None or args.N_max < 1:
        raise SpecError("N-max", "must be a positive integer")
    try:
        cp.family(args.family)
    except ValueError as exc:
        raise SpecError("family", str(exc)) from None
    T = tw.lambda_tower(args.family, args.degree, args.N_max, method=args.method or "auto")
    out = {"tower": T.as_dict(), "surjective": T.surjective(), "tail": T.meta.get("tail"),
           "provenance": T.meta.get("provenance"), "window": [0, T.top],
           "extrapolation": tw.EXTRAPOLATION_TAG}
    if args.ses:
        out["ses"] = _jsonable(tw.ses_check_countable(args.family, args.degree, args.N_max))
    return out


def cmd_spectral(args):
    from . import spectral as sp
    from .lambdas import lambda_
    G, p, M = _group_and_module(args)
    N = _N(args.N)
    kind = args.kind
    if kind in ("lhs", "lambda-quotient"):
        H = _subgroup(G, args.normal or "", "normal")
        if not grp.is_normal(G, H):
            raise SpecError("normal", "subgroup is not normal")
        if kind == "lhs":
            page = sp.lhs_page(G, H, M, N)
            ab = sp.group_cohomology(G, M, N)
        else:
            page = sp.e2_lambda_quotient(G, H, p, M, N)
            ab = lambda_(G, p, M, N).dims
    elif kind == "product":
        m = re.fullmatch(r"direct\((.*)\)", args.group or "")
        parts = _split_args(m.group(1)) if m else []
        if len(parts) != 2:
            raise SpecError("group", "product pages need --group direct(G1,G2)")
        prod = grp.direct_product(parse_group(parts[0]), parse_group(parts[1]))
        M = parse_module(args.module, prod.group, p)
        page = sp.e2_product(prod, p, M, N)
        ab = lambda_(prod.group, p, M, N).dims
    else:
        raise SpecError("kind", f"unknown page kind {kind!r}")
    rep = sp.convergence_check(page, ab, strict=False)
    return {"page": page.as_dict(), "abutment": _dims_block(ab, "abutment"),
            "convergence": _jsonable(rep), "pass": rep["pass"]}


def cmd_verify(args):
    from .suites import run_suite
    r = run_suite(args.suite)
    timing = r.pop("timings")
    return {**_jsonable(r), "_timings": timing}


def cmd_corpus(args):
    f_id = args.family
    if args.truncate is None or args.truncate < 0:
        raise SpecError("truncate", "must be a nonnegative integer")
    G, M, f = _family_level(f"{f_id}@{args.truncate}")
    N = _N(args.N)
    info = {"family": cp.family_id(f), "level": args.truncate, "order": G.order(),
            "module_dim": M.dim, "p": f.p, "U_order": f.u,
            "U_choice": "the unique cyclic subgroup of F^x of this order"}
    if args.op == "describe":
        return info
    if args.op == "lambda":
        from .lambdas import lambda_
        res = lambda_(G, f.p, M, N, shortcuts=not args.no_shortcuts)
        return {**info, **_dims_block(res.dims, res.provenance)}
    if args.op == "cohomology":
        from .barlim import higher_limits
        C = oc.OrbitCategory(G, [G.trivial_subgroup()])
        res = higher_limits(C, atomic_functor(C, M), N)
        return {**info, **_dims_block(res.dims, res.method)}
    raise SpecError("op", f"unknown op {args.op!r}")


HANDLERS = {"lambda": cmd_lambda, "higher-limits": cmd_higher_limits, "tower": cmd_tower,
            "spectral": cmd_spectral, "cohomology": cmd_cohomology, "verify": cmd_verify,
            "corpus": cmd_corpus}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


# --- describe ----------------------------------------------------------------------------

GRAMMAR = """\
commands: lambda, higher-limits, tower, spectral, cohomology, verify, corpus, describe

group (--group):
  S<n> | C<n> | D<n> | A4 | <corpus group name>
  gens:<cycles>;<cycles>[@degree]        0-indexed disjoint cycles, e.g. gens:(0 1 2);(0 1)
  direct(G,H) | wreath(G,p) | semidirect(Cn,Cm,k)
  <family>@<level>                      e.g. hgm-gamma0@2 (module 'hgm' is the family module)
module (--module):  trivial<d> | perm | sign | hgm | mats:<JSON list of generator matrices>
functor (--functor): atomic | fixed-point | coinduced(<object>) | constant(<d>)
objects (--objects): all-p | containing(<cycles>;...) | [<cycles>;...|<cycles>;...]
prime (--p), max degree (--N): degrees 0..N-1 are reported
spectral (--kind): lhs | lambda-quotient (with --normal <cycles>;...) | product (direct(G1,G2))
tower: --family <id> --degree <j> --N-max <n> [--ses]
corpus: --family <id> --truncate <n> --op lambda|cohomology|describe --N <n>
verify: --suite <id>
sample: lambda --group S3 --p 3 --module trivial1 --N 4
environment: HIGHERLIM_ENUM_BOUND, HIGHERLIM_CHAIN_CAP, HIGHERLIM_BAR_LIMIT,
             HIGHERLIM_TOWER_EXACT_ORDER
"""

REPORT_SCHEMA = {
    "schema": SCHEMA,
    "fields": {
        "schema": "string, this schema id",
        "version": "artifact version",
        "command": "one of " + ", ".join(COMMANDS),
        "input": "echo of the parsed job spec",
        "status": "ok | spec-error | failure",
        "result": "command-specific; every dims list comes with 'provenance' and 'window'",
        "extrapolation": "mandatory for tower reports: the window-extrapolation tag; null otherwise",
        "error": "present on failure: {'field', 'message'}",
        "timings": "wall-clock seconds; excluded from determinism guarantees",
    },
}


def describe():
    return GRAMMAR + "\nreport schema:\n" + json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True)


# --- entry point -------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="higherlim", description="Higher limits over orbit categories.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, module=True):
        sp.add_argument("--group")
        sp.add_argument("--p", type=int)
        if module:
            sp.add_argument("--module", default="trivial1")
        sp.add_argument("--N", type=int, default=4)
        sp.add_argument("--method", default="auto", choices=["auto", "bar", "resolution"])
        sp.add_argument("--out")

    s = sub.add_parser("lambda")
    common(s)
    s.add_argument("--no-shortcuts", action="store_true")
    s = sub.add_parser("higher-limits")
    common(s)
    s.add_argument("--functor", default="atomic")
    s.add_argument("--objects", default="all-p")
    s = sub.add_parser("cohomology")
    common(s)
    s = sub.add_parser("spectral")
    common(s)
    s.add_argument("--kind", default="lhs")
    s.add_argument("--normal")
    s = sub.add_parser("tower")
    s.add_argument("--family", required=True)
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--N-max", dest="N_max", type=int, default=3)
    s.add_argument("--method", default="auto", choices=["auto", "resolution", "shortcut"])
    s.add_argument("--ses", action="store_true")
    s.add_argument("--out")
    s = sub.add_parser("verify")
    s.add_argument("--suite", default="")
    s.add_argument("--out")
    s = sub.add_parser("corpus")
    s.add_argument("--family", required=True)
    s.add_argument("--truncate", type=int, default=1)
    s.add_argument("--op", default="describe")
    s.add_argument("--N", type=int, default=4)
    s.add_argument("--no-shortcuts", action="store_true")
    s.add_argument("--out")
    sub.add_parser("describe")
    return ap


def run(args):
    """Execute a parsed job; returns ``(exit status, report)``."""
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    report = {"schema": SCHEMA, "version": __version__, "command": args.command, "input": echo}
    t0 = time.perf_counter()
    status = EXIT_OK
    try:
        result = HANDLERS[args.command](args)
        timings = result.pop("_timings", None) if isinstance(result, dict) else None
        result = _jsonable(result)
        report["status"] = "ok"
        if isinstance(result, dict) and result.get("pass") is False:
            report["status"] = "failure"
            status = EXIT_FAILURE
        report["result"] = result
    except SpecError as exc:
        report["status"] = "spec-error"
        report["error"] = {"field": exc.field, "message": str(exc)}
        status, timings = EXIT_SPEC, None
    except AssertionError as exc:   # invariant violations, inconsistent pages
        report["status"] = "failure"
        report["error"] = {"field": None, "message": f"{type(exc).__name__}: {exc}"}
        status, timings = EXIT_FAILURE, None
    report["extrapolation"] = (report.get("result") or {}).get("extrapolation") \
        if args.command == "tower" else None
    report["timings"] = {"wall_s": round(time.perf_counter() - t0, 3), **(timings or {})}
    return status, report


def report_body(report):
    """The deterministic part of a report (everything but timings), as JSON text."""
    return json.dumps({k: v for k, v in report.items() if k != "timings"}, sort_keys=True)


def _summary(report):
    res = report.get("result") or {}
    if "dims" in res:
        return f"{report['command']}: dims {res['dims']} ({report['status']})"
    if "pass" in res:
        return f"{report['command']}: {'pass' if res['pass'] else 'FAIL'} ({report['status']})"
    return f"{report['command']}: {report['status']}"


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "describe":
        print(describe())
        return EXIT_OK
    status, report = run(args)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(_summary(report))
    else:
        print(text)
    if status == EXIT_SPEC:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
