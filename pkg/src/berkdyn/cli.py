"""Command-line front end: parse, dispatch, emit deterministic JSON or DOT.

Exit codes: 0 success, 2 parse or schema error (the diagnostic names the
offending field), 3 mathematical precondition failure (the library error
verbatim).  All exact numbers are strings in the JSON output; running the
same command twice yields byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import families, green, harmonic, maps, points, tree
from .field import LogNorm, Radius
from .maps import ProbeConfig
from .points import BerkPoint
from .serialize import (
    SchemaError,
    canonical_json,
    fmt_affinoid,
    fmt_coeff_point,
    fmt_lognorm,
    fmt_map,
    fmt_point,
    fmt_radius,
    fmt_tube,
    parse_affinoid,
    parse_coeff_point,
    parse_map,
    parse_point,
    parse_poly_sugar,
    parse_scalar,
    parse_scalar_or_inf,
    parse_tail_cert,
    parse_tube,
)

# one subcommand per exposed library operation; the coverage test checks
# this table against the command list and against the operations
REGISTRY = {
    "classify": points.classify,
    "eval": points.seminorm_eval,
    "join": points.join,
    "hull": tree.hull,
    "retract": tree.retract,
    "tube": tree.tube_from_tree,
    "exhaust": tree.exhaust,
    "supinf": tree.sup_inf,
    "push": maps.pushforward,
    "orbit": maps.orbit,
    "reduce": maps.reduce_map,
    "chordal": maps.chordal,
    "green-eval": green.green_eval,
    "green-gaps": green.green_cauchy_check,
    "probe-lift": green.bounded_lift_probe,
    "probe-equi": maps.equicontinuity_probe,
    "harm-eval": harmonic.harm_eval,
    "harm-approx": harmonic.harm_approx,
    "alpha": families.alpha_of,
    "ev": families.ev_report,
    "limit-demo": families.montel_limit_demo,
}


def jsonable(obj):
    """Recursively convert library values into canonical JSON-ready data."""
    if isinstance(obj, LogNorm):
        return fmt_lognorm(obj)
    if isinstance(obj, Radius):
        return fmt_radius(obj)
    if isinstance(obj, BerkPoint):
        return fmt_point(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _load_input(arg, path="input"):
    if arg is None:
        raise SchemaError(path, "missing input")
    if isinstance(arg, str) and os.path.exists(arg) and not arg.lstrip().startswith(("{", "[")):
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    return arg


def _input_of(args):
    if getattr(args, "input", None) is not None:
        return args.input
    return args.input_flag


def _json_doc(text, path="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(path, f"invalid JSON: {e.msg}") from None


def _points_array(text, p, path="input"):
    doc = _json_doc(text, path)
    if not isinstance(doc, list) or not doc:
        raise SchemaError(path, "expected a nonempty JSON array of points")
    return [parse_point(v, p, f"{path}[{i}]") for i, v in enumerate(doc)]


def _scalar_vector(text, path):
    doc = _json_doc(text, path)
    if not isinstance(doc, list) or not doc:
        raise SchemaError(path, "expected a JSON array of rationals")
    return tuple(parse_scalar(v, f"{path}[{i}]") for i, v in enumerate(doc))


def _parse_harm_datum(text, p, path="input"):
    doc = _json_doc(text, path)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a harmonic datum object")
    c0 = parse_scalar(doc.get("c0", "0"), f"{path}.c0")
    terms = []
    for i, t in enumerate(doc.get("terms", [])):
        if not isinstance(t, dict):
            raise SchemaError(f"{path}.terms[{i}]", "expected a term object {c, a}")
        terms.append(
            (
                parse_scalar(t.get("c", None), f"{path}.terms[{i}].c"),
                parse_scalar(t.get("a", None), f"{path}.terms[{i}].a"),
            )
        )
    U = parse_tube(doc.get("tube"), p, f"{path}.tube")
    try:
        return harmonic.make_datum(c0, terms, U, p)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def _emit(args, payload, dot: str = None):
    if getattr(args, "format", "json") == "dot":
        if dot is None:
            raise SchemaError("format", "dot output is only available for tree results")
        text = dot
    else:
        text = canonical_json(jsonable(payload))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args, p):
    x = parse_point(_load_input(_input_of(args)), p)
    return {"type": points.classify(x)}


def _cmd_eval(args, p):
    P = parse_poly_sugar(args.poly, "poly")
    x = parse_point(_load_input(_input_of(args)), p)
    if x.kind == "IV":
        lo, hi = points.seminorm_enclosure(P, x, p)
        return {"lower": lo, "upper": hi}
    return {"value": points.seminorm_eval(P, x, p)}


def _cmd_join(args, p):
    pts = _points_array(_load_input(_input_of(args)), p)
    if len(pts) != 2:
        raise SchemaError("input", "join takes exactly two points")
    return fmt_point(points.join(pts[0], pts[1], p))


def _cmd_hull(args, p):
    pts = _points_array(_load_input(_input_of(args)), p)
    t = tree.hull(pts, p)
    payload = {"vertices": [fmt_point(v) for v in t.vertices]}
    return payload, tree.tree_to_dot(t, p)


def _cmd_retract(args, p):
    pts = _points_array(_load_input(_input_of(args)), p)
    t = tree.hull(pts, p)
    x = parse_point(args.point, p, "point")
    return fmt_point(tree.retract(t, x, p))


def _cmd_tube(args, p):
    pts = _points_array(_load_input(_input_of(args)), p)
    t = tree.hull(pts, p)
    return fmt_tube(tree.tube_from_tree(t, p))


def _cmd_exhaust(args, p):
    U = parse_tube(_load_input(_input_of(args)), p)
    W, X = tree.exhaust(U, args.m, p)
    return {"W": fmt_tube(W), "X": fmt_affinoid(X)}


def _cmd_supinf(args, p):
    P = parse_poly_sugar(args.poly, "poly")
    A = parse_affinoid(_load_input(_input_of(args)), p)
    sup, inf = tree.sup_inf(P, A, p)
    return {
        "sup": {"value": sup.value, "witness": sup.witness},
        "inf": {
            "value": inf.value,
            "witness": inf.witness,
            "zeros_inside": inf.zeros_inside,
        },
    }


def _cmd_push(args, p):
    f = parse_map(args.map, p, "map")
    x = parse_point(_load_input(_input_of(args)), p)
    return fmt_point(maps.pushforward(f, x, p))


def _cmd_orbit(args, p):
    f = parse_map(args.map, p, "map")
    x = parse_point(_load_input(_input_of(args)), p)
    return {"orbit": [fmt_point(y) for y in maps.orbit(f, x, args.n, p)]}


def _cmd_reduce(args, p):
    f = parse_map(args.map, p, "map")
    rmap, good = maps.reduce_map(f, p)
    return {
        "good_reduction": good,
        "degenerate": rmap.degenerate,
        "residue_map": rmap.dehom_str(),
        "map": fmt_map(f),
    }


def _cmd_chordal(args, p):
    doc = _json_doc(_load_input(_input_of(args)))
    if not isinstance(doc, list) or len(doc) != 2:
        raise SchemaError("input", "chordal takes a JSON array of two points")
    x = parse_scalar_or_inf(doc[0], "input[0]")
    y = parse_scalar_or_inf(doc[1], "input[1]")
    return {"chordal": maps.chordal(x, y, p)}


def _green_ctx(args, p):
    f = parse_map(args.map, p, "map")
    try:
        return green.make_context(f, p)
    except ValueError as e:
        raise SchemaError("map", str(e)) from None


def _cmd_green_eval(args, p):
    ctx = _green_ctx(args, p)
    z = _scalar_vector(args.point, "point")
    eps = parse_scalar(args.eps, "eps")
    gv = green.green_eval(ctx, z, eps, p)
    return {
        "value": gv.value,
        "n_used": gv.n_used,
        "C1": ctx.C1,
        "error_bound": gv.error_bound,
    }


def _cmd_green_gaps(args, p):
    ctx = _green_ctx(args, p)
    z = _scalar_vector(args.point, "point")
    rows = green.green_cauchy_check(ctx, z, args.nmax, p)
    return {
        "C1": ctx.C1,
        "gaps": [
            {"n": n, "gap": gap, "bound": bound, "within": ok} for n, gap, bound, ok in rows
        ],
    }


def _cmd_probe_lift(args, p):
    ctx = _green_ctx(args, p)
    A = parse_affinoid(_load_input(_input_of(args)), p)
    return green.bounded_lift_probe(ctx, A, args.nmax, p)


def _cmd_probe_equi(args, p):
    f = parse_map(args.map, p, "map")
    x0 = parse_scalar(args.point, "point")
    try:
        radii = tuple(int(t) for t in args.radii.split(","))
    except ValueError:
        raise SchemaError("radii", "expected comma-separated integers") from None
    cfg = ProbeConfig(depth=args.depth, radii=radii, seed=args.seed)
    return maps.equicontinuity_probe(f, x0, cfg, p)


def _cmd_harm_eval(args, p):
    g = _parse_harm_datum(_load_input(_input_of(args)), p)
    x = parse_point(args.point, p, "point")
    return {"value": harmonic.harm_eval(g, x, p)}


def _cmd_harm_approx(args, p):
    g = _parse_harm_datum(_load_input(_input_of(args)), p)
    ap = harmonic.harm_approx(g, p)
    return {"b": ap.b, "n": list(ap.exponents), "C": ap.bound}


def _cmd_alpha(args, p):
    phi = parse_poly_sugar(args.poly, "poly")
    try:
        alpha = families.alpha_of([phi], args.delta, p)
    except ValueError as e:
        raise SchemaError("poly", str(e)) from None
    return fmt_coeff_point(alpha)


def _cmd_ev(args, p):
    alpha = parse_coeff_point(_load_input(_input_of(args)), p)
    z = _scalar_vector(args.z, "z")
    g = parse_poly_sugar(args.g, "g")
    return families.ev_report(alpha, z, g, p)


def _cmd_limit_demo(args, p):
    doc = _json_doc(_load_input(_input_of(args)))
    if not isinstance(doc, dict):
        raise SchemaError("input", "expected a demo document")
    fam = doc.get("family")
    if not isinstance(fam, list) or not fam:
        raise SchemaError("input.family", "expected a nonempty list of coefficient points")
    family = [parse_coeff_point(v, p, f"input.family[{i}]") for i, v in enumerate(fam)]
    certs = {}
    for key, cv in doc.get("certs", {}).items():
        from .serialize import _parse_coord_key

        lk, ik = _parse_coord_key(key, f"input.certs.{key}")
        certs[(lk, ik)] = parse_tail_cert(cv, f"input.certs.{key}")
    panel = []
    for i, row in enumerate(doc.get("panel", [])):
        if not isinstance(row, dict):
            raise SchemaError(f"input.panel[{i}]", "expected an object {g, z}")
        g = parse_poly_sugar(row.get("g", ""), f"input.panel[{i}].g")
        z = tuple(
            parse_scalar(v, f"input.panel[{i}].z[{j}]") for j, v in enumerate(row.get("z", []))
        )
        panel.append((g, z))
    alpha, report = families.montel_limit_demo(family, certs, panel, p)
    return {"alpha": fmt_coeff_point(alpha), "report": report}


_HANDLERS = {
    "classify": _cmd_classify,
    "eval": _cmd_eval,
    "join": _cmd_join,
    "hull": _cmd_hull,
    "retract": _cmd_retract,
    "tube": _cmd_tube,
    "exhaust": _cmd_exhaust,
    "supinf": _cmd_supinf,
    "push": _cmd_push,
    "orbit": _cmd_orbit,
    "reduce": _cmd_reduce,
    "chordal": _cmd_chordal,
    "green-eval": _cmd_green_eval,
    "green-gaps": _cmd_green_gaps,
    "probe-lift": _cmd_probe_lift,
    "probe-equi": _cmd_probe_equi,
    "harm-eval": _cmd_harm_eval,
    "harm-approx": _cmd_harm_approx,
    "alpha": _cmd_alpha,
    "ev": _cmd_ev,
    "limit-demo": _cmd_limit_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None, help="base prime p (or env BERKDYN_PRIME)")
    common.add_argument("--input", dest="input_flag", default=None,
                        help="input document: inline JSON or a file path (alternative to the positional)")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "dot"], default="json")

    ap = argparse.ArgumentParser(prog="berkdyn", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **pos):
        sp = sub.add_parser(name, parents=[common])
        for flag, kw in pos.items():
            sp.add_argument(flag if flag.startswith("-") else flag, **kw)
        return sp

    add("classify", input={"nargs": "?", "help": "point JSON or path"})
    sp = add("eval", input={"nargs": "?"})
    sp.add_argument("--poly", required=True, help='polynomial sugar, e.g. "z^2-2"')
    add("join", input={"nargs": "?", "help": "[point, point]"})
    add("hull", input={"nargs": "?", "help": "array of type II points"})
    sp = add("retract", input={"nargs": "?", "help": "array of tree points"})
    sp.add_argument("--point", required=True)
    add("tube", input={"nargs": "?"})
    sp = add("exhaust", input={"nargs": "?", "help": "tube JSON"})
    sp.add_argument("--m", type=int, required=True)
    sp = add("supinf", input={"nargs": "?", "help": "affinoid JSON"})
    sp.add_argument("--poly", required=True)
    sp = add("push", input={"nargs": "?", "help": "point JSON"})
    sp.add_argument("--map", required=True)
    sp = add("orbit", input={"nargs": "?", "help": "point JSON"})
    sp.add_argument("--map", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("reduce")
    sp.add_argument("--map", required=True)
    add("chordal", input={"nargs": "?", "help": '["0", "2"] or "inf" entries'})
    sp = add("green-eval")
    sp.add_argument("--map", required=True)
    sp.add_argument("--point", required=True, help='cone point, e.g. "[\\"1\\",\\"2\\"]"')
    sp.add_argument("--eps", required=True)
    sp = add("green-gaps")
    sp.add_argument("--map", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp = add("probe-lift", input={"nargs": "?", "help": "affinoid JSON"})
    sp.add_argument("--map", required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp = add("probe-equi")
    sp.add_argument("--map", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--depth", type=int, default=5)
    sp.add_argument("--radii", default="-1,-2,-3")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("harm-eval", input={"nargs": "?", "help": "datum JSON"})
    sp.add_argument("--point", required=True)
    add("harm-approx", input={"nargs": "?"})
    sp = add("alpha")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp = add("ev", input={"nargs": "?", "help": "coefficient point JSON"})
    sp.add_argument("--z", required=True)
    sp.add_argument("--g", required=True)
    add("limit-demo", input={"nargs": "?", "help": "demo document JSON"})
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    prime = args.prime
    if prime is None:
        envp = os.environ.get("BERKDYN_PRIME")
        if envp is not None:
            try:
                prime = int(envp)
            except ValueError:
                print("error at prime: BERKDYN_PRIME is not an integer", file=sys.stderr)
                return 2
    if prime is None:
        print("error at prime: --prime is required (or set BERKDYN_PRIME)", file=sys.stderr)
        return 2
    if not _is_prime(prime):
        print(f"error at prime: {prime} is not a prime >= 2", file=sys.stderr)
        return 2
    handler = _HANDLERS[args.command]
    try:
        result = handler(args, prime)
        if isinstance(result, tuple):
            payload, dot = result
            _emit(args, payload, dot)
        else:
            if getattr(args, "format", "json") == "dot":
                raise SchemaError("format", "dot output is only available for tree results")
            _emit(args, result)
        return 0
    except SchemaError as e:
        print(f"error at {e.path}: {e.message}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        print(str(e), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
