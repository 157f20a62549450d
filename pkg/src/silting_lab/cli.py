"""``silting-lab`` command line front end.

Every command reads a quiver file in the line-oriented DSL and prints a JSON
report (``--format text`` gives a flat key/value listing).  Module arguments
use short descriptors joined with ``+`` for direct sums:

``A`` free module, ``P:v`` or ``P:v:k`` shifted projective, ``M:v`` sum of
the other projectives, ``Y:v`` resolution of the simple at ``v``,
``RA:v:t`` / ``LA:v:t`` iterated mutations, ``FRA:v:t`` / ``FLA:v:t`` their
fundamental-domain representatives.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import DgPathAlgebra
from .config import delta_default
from .cluster import (
    cluster_tilting_check,
    common_shift,
    complement_summand,
    complements,
    euler_les_check,
    fundamental_rep,
    hom_cluster,
    periodicity_check,
    tag,
)
from .hochschild import hochschild_homology, loop_obstruction, rigidity_check
from .modules import (
    direct_sum,
    free_module,
    hom_derived,
    iso_test,
    k0_class,
    k0_determinant,
    projective,
    support,
    support_oracle,
)
from .mutation import ar_angle, mutation_states, mutations, truncation_oracle, resolve_simple, resolution_homology
from .potential import check_strongly_cy_presentation, ginzburg, ginzburg_to_dpp, normalize_degrees, preprojective
from .quiver import COMPOSITION, DslError, parse, print_model, validate
from .scenarios import SCENARIOS, run_scenario


class CliError(Exception):
    pass


# ------------------------------------------------------------------ helpers


def _read_model(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text)


def _truncation(args):
    if getattr(args, "exact", False):
        return None
    if getattr(args, "trunc", None) is not None:
        return args.trunc
    return "default"


def _algebra(args) -> DgPathAlgebra:
    q, w, m = _read_model(args.input)
    if args.algebra == "ginzburg":
        return ginzburg(q, w, m, _truncation(args))
    return preprojective(q, w, m, _truncation(args))


def parse_module(alg: DgPathAlgebra, text: str):
    parts = []
    for piece in text.split("+"):
        piece = piece.strip()
        fields = piece.split(":")
        kind = fields[0]
        try:
            if kind == "A":
                parts.append(free_module(alg))
            elif kind == "P":
                k = int(fields[2]) if len(fields) > 2 else 0
                parts.append(projective(alg, fields[1], k))
            elif kind == "M":
                parts.append(complement_summand(alg, fields[1]))
            elif kind == "Y":
                parts.append(resolve_simple(alg, fields[1]).module)
            elif kind in ("RA", "LA", "FRA", "FLA"):
                side = "right" if kind.endswith("RA") else "left"
                t = int(fields[2])
                x = mutations(alg, fields[1], side, t)[t]
                if kind.startswith("F"):
                    m = alg.info["m"]
                    x = fundamental_rep(x, common_shift([x], m), m).module
                parts.append(x)
            else:
                raise CliError(f"unknown module descriptor {piece!r}")
        except (IndexError, ValueError, KeyError) as exc:
            raise CliError(f"bad module descriptor {piece!r}: {exc}") from exc
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


def _emit(payload: dict, args) -> None:
    payload = {"schema": 1, "composition": COMPOSITION, **payload}
    if getattr(args, "format", "json") == "text":
        for k, v in payload.items():
            print(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    else:
        print(json.dumps(payload, indent=2, default=str))


# ----------------------------------------------------------------- commands


def cmd_validate(args):
    q, w, m = _read_model(args.input)
    rep = validate(q, w, m, ginzburg=args.algebra == "ginzburg")
    _emit({"command": "validate", "report": rep.to_json(), "ok": rep.ok}, args)
    return 0 if rep.ok else 1


def cmd_print(args):
    q, w, m = _read_model(args.input)
    sys.stdout.write(print_model(q, w, m))
    return 0


def _algebra_json(alg: DgPathAlgebra) -> dict:
    return {
        "kind": alg.info.get("kind"),
        "vertices": list(alg.vertices),
        "arrows": [
            {"name": n, "source": alg.vertices[s], "target": alg.vertices[t], "degree": d}
            for n, s, t, d in zip(alg.names, alg.src, alg.tgt, alg.deg)
        ],
        "differential": {n: alg.format(alg.darr[k]) for k, n in enumerate(alg.names)},
        "truncation": alg.truncation,
    }


def cmd_build(args):
    alg = _algebra(args)
    _emit({"command": "build", "algebra": _algebra_json(alg), "d_squared_zero": alg.check_d_squared()[0]}, args)
    return 0


def cmd_normalize(args):
    alg = _algebra(args)
    if args.algebra == "ginzburg":
        target, iota = ginzburg_to_dpp(alg)
    else:
        target, iota = normalize_degrees(alg)
    _emit({"command": "normalize", "algebra": _algebra_json(target), "map": iota.to_json()}, args)
    return 0


def cmd_check_cy(args):
    alg = _algebra(args)
    rep = check_strongly_cy_presentation(alg, alg.info["m"])
    _emit({"command": "check-cy", "report": rep.to_json()}, args)
    return 0 if rep.ok else 1


def _window(args):
    if args.window:
        lo, sep, hi = args.window.partition("..")
        try:
            return int(lo), int(hi) if sep else int(lo)
        except ValueError as exc:
            raise CliError(f"bad window {args.window!r}; expected lo..hi") from exc
    if args.lo is None:
        raise CliError("give a degree window with --window lo..hi")
    return args.lo, args.hi


def cmd_homology(args):
    alg = _algebra(args)
    pieces = None
    if args.piece:
        try:
            pieces = tuple(alg.vindex[v] for v in args.piece)
        except KeyError as exc:
            raise CliError(f"unknown vertex {exc.args[0]!r}") from exc
    h = alg.homology(_window(args), pieces, delta=args.delta)
    _emit({"command": "homology", "report": h.to_json()}, args)
    return _stability_exit(args, h.stable)


def _stability_exit(args, stable) -> int:
    if stable is False:
        print("warning: dimensions changed between truncation orders", file=sys.stderr)
        return 1 if args.on_unstable == "fail" else 0
    return 0


def cmd_hom(args):
    alg = _algebra(args)
    x, y = parse_module(alg, args.x), parse_module(alg, args.y)
    res = hom_derived(x, y, args.n, check_stability=True, delta=args.delta or delta_default())
    _emit({"command": "hom", "x": args.x, "y": args.y, "n": args.n, "report": res.to_json()}, args)
    return _stability_exit(args, getattr(res, "stable", None))


def cmd_support(args):
    alg = _algebra(args)
    x = parse_module(alg, args.x)
    s, o = support(x), support_oracle(x)
    _emit({"command": "support", "x": args.x, "support": s, "oracle": o, "agree": s == o}, args)
    return 0 if s == o else 1


def cmd_iso(args):
    alg = _algebra(args)
    x, y = parse_module(alg, args.x), parse_module(alg, args.y)
    res = iso_test(x, y, seed=args.seed)
    _emit({"command": "iso", "isomorphic": bool(res), "reason": res.reason}, args)
    return 0


def cmd_k0(args):
    alg = _algebra(args)
    xs = [parse_module(alg, t) for t in args.x]
    _emit({"command": "k0", "classes": [k0_class(x).to_json() for x in xs],
           "determinant": k0_determinant(xs) if len(xs) == len(alg.vertices) else None}, args)
    return 0


def cmd_mutate(args):
    alg = _algebra(args)
    states = mutation_states(alg, args.vertex, args.dir, args.steps)
    out = []
    for st in states:
        j = st.to_json()
        j["support"] = support(st.current)
        j["k0"] = k0_class(st.current).to_json()
        out.append(j)
    ok = all(all(st.checks.values()) for st in states)
    _emit({"command": "mutate", "states": out, "ok": ok}, args)
    return 0 if ok else 1


def cmd_resolve_simple(args):
    alg = _algebra(args)
    res = resolve_simple(alg, args.vertex)
    hom = resolution_homology(res, (args.lo, 0))
    _emit({
        "command": "resolve-simple",
        "module": res.module.to_json(),
        "top_index": res.top_index,
        "columns": res.columns,
        "homology": {f"{alg.vertices[v]}@{n}": d for (v, n), d in sorted(hom.items())},
    }, args)
    return 0


def cmd_truncation_oracle(args):
    alg = _algebra(args)
    m = alg.info["m"]
    lo, hi = truncation_oracle(alg, args.vertex, args.t)
    ra = mutations(alg, args.vertex, "right", args.t)[args.t]
    la = mutations(alg, args.vertex, "left", m + 1 - args.t)[m + 1 - args.t]
    a, b = iso_test(lo, ra), iso_test(hi, la)
    _emit({"command": "truncation-oracle", "low": lo.to_json(), "high": hi.to_json(),
           "low_iso_RA": bool(a), "high_iso_LA": bool(b)}, args)
    return 0 if a and b else 1


def cmd_ar_angle(args):
    alg = _algebra(args)
    rep = ar_angle(alg, args.vertex)
    _emit({"command": "ar-angle", "report": rep.to_json()}, args)
    return 0 if rep.ok else 1


def cmd_cluster_hom(args):
    alg = _algebra(args)
    x, y = parse_module(alg, args.x), parse_module(alg, args.y)
    _emit({"command": "cluster-hom", "t": args.t, "report": hom_cluster(x, y, args.t)}, args)
    return 0


def cmd_ct_check(args):
    alg = _algebra(args)
    z = parse_module(alg, args.x)
    rep = cluster_tilting_check(z)
    _emit({"command": "ct-check", "report": rep.to_json()}, args)
    return 0 if rep.ok else 1


def cmd_tag(args):
    alg = _algebra(args)
    t = tag(parse_module(alg, args.x))
    _emit({"command": "tag", "report": t.to_json(), "ok": t.ok}, args)
    return 0


def cmd_periodicity(args):
    alg = _algebra(args)
    rep = periodicity_check(alg, args.vertex)
    _emit({"command": "periodicity", "report": rep.to_json()}, args)
    return 0 if rep.ok else 1


def cmd_complements(args):
    alg = _algebra(args)
    rep = complements(alg, args.vertex)
    _emit({"command": "complements", "report": rep.to_json()}, args)
    return 0


def cmd_euler(args):
    alg = _algebra(args)
    x, y = parse_module(alg, args.x), parse_module(alg, args.y)
    rep = euler_les_check(x, y)
    _emit({"command": "euler-les", "report": rep.to_json()}, args)
    return 0 if rep.ok else 1


def cmd_hochschild(args):
    alg = _algebra(args)
    hs = hochschild_homology(alg, args.pmax, args.delta)
    _emit({"command": "hochschild", "report": hs.to_json()}, args)
    return _stability_exit(args, hs.stable)


def cmd_rigidity(args):
    alg = _algebra(args)
    r = args.r if args.r is not None else alg.info["m"]
    rep = rigidity_check(alg, r)
    _emit({"command": "rigidity", "report": rep.to_json()}, args)
    return 0


def cmd_loops(args):
    alg = _algebra(args)
    _emit({"command": "loops", "degree": -args.deg, "loops": loop_obstruction(alg, args.deg)}, args)
    return 0


def cmd_run(args):
    if not args.scenario:
        print("scenarios: " + ", ".join(SCENARIOS))
        return 0
    bundles, ok = [], True
    for name in args.scenario:
        b = run_scenario(name).to_json(args.on_unstable)
        ok = ok and b["ok"]
        bundles.append(b)
    payload = {"command": "run", "bundles": bundles, "ok": ok}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"schema": 1, "composition": COMPOSITION, **payload}, fh, indent=2, default=str)
    _emit(payload, args)
    return 0 if ok else 1


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="silting-lab", description="Silting mutation and cluster category toolkit")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command")

    def add(name, func, helptext, algebra=True, needs_input=True):
        p = sub.add_parser(name, help=helptext)
        if needs_input:
            p.add_argument("input", help="quiver file in the DSL")
        if algebra:
            p.add_argument("--algebra", choices=["ginzburg", "dpp"], default="dpp")
            p.add_argument("--trunc", type=int, default=None, help="truncation order L (env SILTING_TRUNC)")
            p.add_argument("--exact", action="store_true", help="exact graded mode (acyclic degree-0 part)")
        p.add_argument("--delta", type=int, default=None, help="stability step (env SILTING_DELTA)")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--on-unstable", choices=["warn", "fail"], default="warn")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the input conditions")
    add("print", cmd_print, "echo the model in canonical DSL form", algebra=False)
    add("build", cmd_build, "build the dg algebra and print arrows and differential")
    add("normalize", cmd_normalize, "Ginzburg to preprojective, or degree normalization")
    add("check-cy", cmd_check_cy, "structural Calabi-Yau presentation check")
    p = add("homology", cmd_homology, "homology dimensions and bases")
    p.add_argument("--window", help="degree window lo..hi, e.g. -2..0")
    p.add_argument("--piece", nargs=2, metavar=("I", "J"), help="restrict to paths from vertex I to vertex J")
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--hi", type=int, default=0)
    p = add("hom", cmd_hom, "dim H^n Hom(X, Y)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--n", type=int, default=0)
    p = add("support", cmd_support, "support of a minimal module")
    p.add_argument("--x", required=True)
    p = add("iso", cmd_iso, "isomorphism test of two minimal modules")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--seed", type=int, default=0)
    p = add("k0", cmd_k0, "Grothendieck group classes")
    p.add_argument("--x", action="append", required=True)
    p = add("mutate", cmd_mutate, "iterated mutation of a vertex projective")
    p.add_argument("--vertex", required=True)
    p.add_argument("--dir", choices=["right", "left"], default="right")
    p.add_argument("--steps", type=int, default=1)
    p = add("resolve-simple", cmd_resolve_simple, "minimal resolution of a simple module")
    p.add_argument("--vertex", required=True)
    p.add_argument("--lo", type=int, default=-4, help="lowest degree of the homology check")
    p = add("truncation-oracle", cmd_truncation_oracle, "compare weight truncations with mutations")
    p.add_argument("--vertex", required=True)
    p.add_argument("--t", type=int, required=True)
    p = add("ar-angle", cmd_ar_angle, "assemble and check the AR angle at a vertex")
    p.add_argument("--vertex", required=True)
    p = add("cluster-hom", cmd_cluster_hom, "dim Hom_C(X, Sigma^t Y)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--t", type=int, default=0)
    p = add("ct-check", cmd_ct_check, "cluster tilting check")
    p.add_argument("--x", required=True)
    p = add("tag", cmd_tag, "fundamental-domain membership evidence")
    p.add_argument("--x", required=True)
    p = add("periodicity", cmd_periodicity, "periodicity of mutations in the cluster category")
    p.add_argument("--vertex", required=True)
    p = add("complements", cmd_complements, "complements of the almost complete object")
    p.add_argument("--vertex", required=True)
    p = add("euler-les", cmd_euler, "Euler consistency of Ext dimensions")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = add("hochschild", cmd_hochschild, "low-degree Hochschild homology")
    p.add_argument("--pmax", type=int, default=2)
    p = add("rigidity", cmd_rigidity, "r-rigidity check")
    p.add_argument("--r", type=int, default=None)
    p = add("loops", cmd_loops, "zero-differential loops of degree -p")
    p.add_argument("--deg", type=int, required=True)
    p = add("run", cmd_run, "run pinned scenarios", algebra=False, needs_input=False)
    p.add_argument("scenario", nargs="*", help="scenario names; none lists them")
    p.add_argument("--out", default=None, help="write the report bundle to this file")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command is None:
        ap.print_help()
        return 0
    if getattr(args, "delta", None) is not None:
        os.environ["SILTING_DELTA"] = str(args.delta)
    try:
        return args.func(args)
    except DslError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
