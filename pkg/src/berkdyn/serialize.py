"""JSON schemas and parsers for the toolkit's external interfaces.

All exact numbers travel as strings ("num/den" rationals, "-inf"); small
structural integers stay JSON integers.  Parsing failures raise
``SchemaError`` carrying the path of the offending field.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .families import (
    CauchyTail,
    CoeffPoint,
    EquidistantTail,
    NestedTail,
    make_coeff_point,
)
from .field import LogNorm, MPoly, Poly, Radius
from .maps import ProjMap, normalize_lift
from .points import BerkPoint, ball, infinity, rigid, type_iv
from .tree import BasicTube, Disk, StdAffinoid, make_affinoid, make_tube


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def parse_scalar(v, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SchemaError(path, "expected a rational as a string")
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(path, f"not a rational: {e}") from None


def fmt_scalar(x: Fraction) -> str:
    return str(x)


def fmt_lognorm(l: LogNorm):
    if l.is_bottom:
        return "-inf"
    if l.eps == 0:
        return str(l.value)
    return {"e": str(l.value), "delta": str(l.eps)}


def parse_radius(v, path: str) -> Radius:
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a radius object {e, delta, zero}")
    if v.get("zero", False):
        return Radius.zero_radius()
    e = parse_scalar(v.get("e", "0"), f"{path}.e")
    delta = v.get("delta", 0)
    if isinstance(delta, bool) or not isinstance(delta, int):
        raise SchemaError(f"{path}.delta", "expected an integer")
    return Radius(e, delta)


def fmt_radius(r: Radius):
    if r.zero:
        return {"e": "0", "delta": 0, "zero": True}
    return {"e": str(r.e), "delta": r.delta, "zero": False}


def parse_point(v, p: int, path: str = "point") -> BerkPoint:
    if isinstance(v, str):
        try:
            v = json.loads(v)
        except json.JSONDecodeError as e:
            raise SchemaError(path, f"invalid JSON: {e.msg}") from None
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a point object")
    kind = v.get("kind")
    if kind == "I":
        return rigid(parse_scalar(v.get("a", None), f"{path}.a"))
    if kind == "ball":
        a = parse_scalar(v.get("a", None), f"{path}.a")
        r = parse_radius(v.get("r", None), f"{path}.r")
        if r.zero:
            raise SchemaError(f"{path}.r", "ball radius must be positive; use kind I")
        return ball(a, r)
    if kind == "IV":
        pre = v.get("prefix")
        if not isinstance(pre, list) or not pre:
            raise SchemaError(f"{path}.prefix", "expected a nonempty list")
        entries = []
        for i, item in enumerate(pre):
            if not isinstance(item, list) or len(item) != 2:
                raise SchemaError(f"{path}.prefix[{i}]", "expected [a, radius]")
            a = parse_scalar(item[0], f"{path}.prefix[{i}][0]")
            r = parse_radius(item[1], f"{path}.prefix[{i}][1]")
            entries.append((a, r))
        try:
            return type_iv(entries, p)
        except ValueError as e:
            raise SchemaError(f"{path}.prefix", str(e)) from None
    if kind == "inf":
        return infinity()
    raise SchemaError(f"{path}.kind", "expected one of I, ball, IV, inf")


def fmt_point(x: BerkPoint):
    if x.kind == "I":
        return {"kind": "I", "a": str(x.a)}
    if x.kind == "ball":
        return {"kind": "ball", "a": str(x.a), "r": fmt_radius(x.r)}
    if x.kind == "IV":
        return {"kind": "IV", "prefix": [[str(a), fmt_radius(r)] for a, r in x.prefix]}
    return {"kind": "inf"}


def parse_disk(v, path: str) -> Disk:
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a disk object {a, r}")
    a = parse_scalar(v.get("a", None), f"{path}.a")
    r = parse_radius(v.get("r", None), f"{path}.r")
    return Disk(a, r)


def fmt_disk(d: Disk):
    return {"a": str(d.a), "r": fmt_radius(d.r)}


def parse_tube(v, p: int, path: str = "tube") -> BasicTube:
    if isinstance(v, str):
        try:
            v = json.loads(v)
        except json.JSONDecodeError as e:
            raise SchemaError(path, f"invalid JSON: {e.msg}") from None
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a tube object {outer, removed}")
    outer = v.get("outer")
    outer = None if outer is None else parse_disk(outer, f"{path}.outer")
    removed = [
        parse_disk(d, f"{path}.removed[{i}]") for i, d in enumerate(v.get("removed", []))
    ]
    try:
        return make_tube(outer, removed, p)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def fmt_tube(U: BasicTube):
    return {
        "outer": None if U.outer is None else fmt_disk(U.outer),
        "removed": [fmt_disk(d) for d in U.removed],
    }


def parse_affinoid(v, p: int, path: str = "affinoid") -> StdAffinoid:
    if isinstance(v, str):
        try:
            v = json.loads(v)
        except json.JSONDecodeError as e:
            raise SchemaError(path, f"invalid JSON: {e.msg}") from None
    if not isinstance(v, dict):
        raise SchemaError(path, "expected an affinoid object {outer, removed}")
    outer = v.get("outer")
    if outer is None:
        raise SchemaError(f"{path}.outer", "affinoids need a closed outer disk")
    outer = parse_disk(outer, f"{path}.outer")
    removed = [
        parse_disk(d, f"{path}.removed[{i}]") for i, d in enumerate(v.get("removed", []))
    ]
    try:
        return make_affinoid(outer, removed, p)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def fmt_affinoid(A: StdAffinoid):
    return {"outer": fmt_disk(A.outer), "removed": [fmt_disk(d) for d in A.removed]}


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?:(?P<var>z)(?:\^(?P<exp>\d+))?)?"
    r"(?:\s*/\s*(?P<den>\d+))?\s*$"
)


def parse_poly_sugar(text: str, path: str = "poly") -> Poly:
    """Parse "z^2+2", "z^2/2", "2*z - 1/3" style univariate polynomials."""
    if not isinstance(text, str) or not text.strip():
        raise SchemaError(path, "expected a polynomial expression")
    s = text.replace("-", "+-").replace("++-", "+-")
    parts = [t for t in s.split("+") if t.strip()]
    acc = Poly()
    for raw in parts:
        neg = False
        t = raw.strip()
        if t.startswith("-"):
            neg = True
            t = t[1:]
        m = _TERM_RE.match(t)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise SchemaError(path, f"cannot parse term {raw.strip()!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("den"):
            coeff /= Fraction(m.group("den"))
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        if neg:
            coeff = -coeff
        acc = acc + Poly({exp: coeff})
    return acc


def parse_form(v, nvars: int, path: str) -> MPoly:
    if not isinstance(v, list) or not v:
        raise SchemaError(path, "expected a nonempty list of monomial terms")
    acc = MPoly(nvars)
    for i, term in enumerate(v):
        if not isinstance(term, dict):
            raise SchemaError(f"{path}[{i}]", "expected a term object {coeff, exps}")
        c = parse_scalar(term.get("coeff", None), f"{path}[{i}].coeff")
        exps = term.get("exps")
        if not isinstance(exps, list) or len(exps) != nvars or not all(
            isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps
        ):
            raise SchemaError(f"{path}[{i}].exps", f"expected {nvars} nonnegative integers")
        acc = acc + MPoly(nvars, {tuple(exps): c})
    return acc


def poly_to_projmap(phi: Poly, p: int) -> ProjMap:
    """Homogenize a chart polynomial z -> phi(z) into a normalized map pair."""
    if phi.is_zero or phi.degree < 1:
        raise ValueError("chart polynomial must be nonconstant")
    d = phi.degree
    F0 = MPoly(2, {(i, d - i): a for i, a in phi.c.items()})
    F1 = MPoly(2, {(0, d): 1})
    return normalize_lift((F0, F1), p, check_degree=False)


def parse_map(v, p: int, path: str = "map") -> ProjMap:
    """A map as dehomogenized sugar ("z^2+2") or as {"forms": [[term...]...]}."""
    if isinstance(v, str) and not v.strip().startswith("{"):
        phi = parse_poly_sugar(v, path)
        try:
            return poly_to_projmap(phi, p)
        except ValueError as e:
            raise SchemaError(path, str(e)) from None
    if isinstance(v, str):
        try:
            v = json.loads(v)
        except json.JSONDecodeError as e:
            raise SchemaError(path, f"invalid JSON: {e.msg}") from None
    if not isinstance(v, dict) or "forms" not in v:
        raise SchemaError(path, "expected sugar text or an object with a forms list")
    forms_v = v["forms"]
    if not isinstance(forms_v, list) or len(forms_v) < 2:
        raise SchemaError(f"{path}.forms", "expected at least two forms")
    nvars = len(forms_v)
    forms = [parse_form(f, nvars, f"{path}.forms[{i}]") for i, f in enumerate(forms_v)]
    try:
        return normalize_lift(forms, p)
    except ValueError as e:
        raise SchemaError(f"{path}.forms", str(e)) from None


def fmt_map(f: ProjMap):
    forms = []
    for F in f.forms:
        forms.append(
            [
                {"coeff": str(c), "exps": list(e)}
                for e, c in sorted(F.c.items(), reverse=True)
            ]
        )
    return {"forms": forms, "degree": f.degree}


def parse_scalar_or_inf(v, path: str):
    if v == "inf":
        return "inf"
    return parse_scalar(v, path)


def _coord_key_str(l: int, I) -> str:
    return f"{l}:{','.join(str(i) for i in I)}"


def _parse_coord_key(key: str, path: str):
    m = re.fullmatch(r"(\d+):([\d,]+)", key)
    if not m:
        raise SchemaError(path, f"coordinate key {key!r} is not of the form l:i1,i2")
    l = int(m.group(1))
    I = tuple(int(t) for t in m.group(2).split(","))
    return l, I


def parse_coeff_point(v, p: int, path: str = "coeff") -> CoeffPoint:
    if isinstance(v, str):
        try:
            v = json.loads(v)
        except json.JSONDecodeError as e:
            raise SchemaError(path, f"invalid JSON: {e.msg}") from None
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a coefficient point object")
    dims = v.get("dims")
    if not isinstance(dims, list) or len(dims) != 3 or not all(
        isinstance(d, int) and d >= 0 for d in dims
    ):
        raise SchemaError(f"{path}.dims", "expected [r, s, delta] nonnegative integers")
    r, s, delta = dims
    coords = {}
    for key, pv in v.get("coords", {}).items():
        l, I = _parse_coord_key(key, f"{path}.coords.{key}")
        if len(I) != r:
            raise SchemaError(f"{path}.coords.{key}", f"multi-index arity must be {r}")
        coords[(l, I)] = parse_point(pv, p, f"{path}.coords.{key}")
    try:
        return make_coeff_point(r, s, delta, coords, p)
    except ValueError as e:
        raise SchemaError(f"{path}.coords", str(e)) from None


def fmt_coeff_point(alpha: CoeffPoint):
    return {
        "dims": [alpha.r, alpha.s, alpha.delta],
        "coords": {
            _coord_key_str(l, I): fmt_point(pt) for (l, I), pt in alpha.coords
        },
    }


def parse_tail_cert(v, path: str):
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a certificate object")
    kind = v.get("kind")
    if kind == "cauchy":
        rates = v.get("rates")
        if not isinstance(rates, list) or not rates:
            raise SchemaError(f"{path}.rates", "expected a nonempty list of radii")
        rr = tuple(parse_radius(x, f"{path}.rates[{i}]") for i, x in enumerate(rates))
        limit = v.get("limit")
        limit = None if limit is None else parse_scalar(limit, f"{path}.limit")
        return CauchyTail(rr, limit)
    if kind == "equidistant":
        return EquidistantTail(parse_radius(v.get("r"), f"{path}.r"))
    if kind == "nested":
        radii = v.get("radii")
        if not isinstance(radii, list) or not radii:
            raise SchemaError(f"{path}.radii", "expected a nonempty list of radii")
        return NestedTail(tuple(parse_radius(x, f"{path}.radii[{i}]") for i, x in enumerate(radii)))
    raise SchemaError(f"{path}.kind", "expected one of cauchy, equidistant, nested")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
