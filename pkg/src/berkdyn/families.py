"""Families of polynomial maps of bounded degree as coefficient points.

A polynomial map D^r -> closed D^s of componentwise degree <= delta with
unit-ball coefficients is a rigid point of the coefficient polydisk, one
coordinate per (component, multi-exponent).  Non-rigid coefficient points
(product points: a one-dimensional ball per coordinate) evaluate through
the transfer polynomial: |g(f(z))| becomes the product-point seminorm of a
polynomial in the coefficient variables, which is exactly computable as an
iterated Gauss norm around the coordinate centers.

Limits of coefficient sequences are never extrapolated from finite data:
the caller asserts the tail behavior with a certificate, which is verified
exactly against the prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .field import LogNorm, MPoly, Poly, Radius, as_scalar, lognorm
from .points import BerkPoint, ball, rigid, type_iv


def index_set(r: int, s: int, delta: int):
    """All (component, multi-exponent) coordinate labels, in canonical order."""
    return [
        (l, I)
        for l in range(1, s + 1)
        for I in product(range(delta + 1), repeat=r)
    ]


@dataclass(frozen=True)
class CoeffPoint:
    r: int
    s: int
    delta: int
    coords: tuple  # ((l, I), BerkPoint) pairs in index_set order

    def coord(self, l: int, I) -> BerkPoint:
        I = tuple(I)
        for key, pt in self.coords:
            if key == (l, I):
                return pt
        raise KeyError((l, I))


def _unit_disk_ok(pt: BerkPoint) -> bool:
    if pt.kind == "I":
        return True  # norm bound checked against p below
    if pt.kind == "ball":
        return True
    if pt.kind == "IV":
        return True
    return False


def make_coeff_point(r: int, s: int, delta: int, coords: dict, p: int) -> CoeffPoint:
    """Assemble a product point; every coordinate must lie in the unit disk."""
    full = []
    for key in index_set(r, s, delta):
        pt = coords.get(key, rigid(0))
        if not _unit_disk_ok(pt):
            raise ValueError(f"coordinate {key} is not an affine point")
        if pt.kind == "I":
            if lognorm(pt.a, p) > LogNorm(0):
                raise ValueError(f"coordinate {key} lies outside the unit disk")
        elif pt.kind == "ball":
            if max(lognorm(pt.a, p), pt.r.log()) > LogNorm(0):
                raise ValueError(f"coordinate {key} lies outside the unit disk")
        else:  # type IV: the first prefix ball bounds the point
            a0, r0 = pt.prefix[0]
            if max(lognorm(a0, p), r0.log()) > LogNorm(0):
                raise ValueError(f"coordinate {key} lies outside the unit disk")
        full.append(((key[0], tuple(key[1])), pt))
    return CoeffPoint(r, s, delta, tuple(full))


def is_rigid(alpha: CoeffPoint) -> bool:
    return all(pt.kind == "I" for _, pt in alpha.coords)


def alpha_of(components, delta: int, p: int, r: int = None) -> CoeffPoint:
    """Coefficient point of an explicit polynomial map with unit coefficients.

    ``components`` is one polynomial per target coordinate: a ``Poly`` when
    r = 1 or an ``MPoly`` in r variables.  Componentwise degree above delta
    or a coefficient of norm > 1 is rejected.
    """
    comps = []
    for f in components:
        if isinstance(f, Poly):
            comps.append(MPoly(1, {(i,): a for i, a in f.c.items()}))
        else:
            comps.append(f)
    if not comps:
        raise ValueError("empty map")
    if r is None:
        r = comps[0].n
    if any(f.n != r for f in comps):
        raise ValueError("components must share the source arity")
    s = len(comps)
    coords = {}
    for l, f in enumerate(comps, start=1):
        for e, c in f.c.items():
            if max(e) > delta:
                raise ValueError(f"component {l} has degree above delta in {e}")
            if lognorm(c, p) > LogNorm(0):
                raise ValueError(f"coefficient {c} of component {l} has norm > 1")
            coords[(l, e)] = rigid(c)
    return make_coeff_point(r, s, delta, coords, p)


def truncate(alpha: CoeffPoint, delta: int, p: int) -> CoeffPoint:
    """Project to a lower truncation level by dropping high coordinates."""
    if delta > alpha.delta:
        raise ValueError("can only truncate downward")
    keep = {}
    for (l, I), pt in alpha.coords:
        if max(I) <= delta:
            keep[(l, I)] = pt
    return make_coeff_point(alpha.r, alpha.s, delta, keep, p)


def _as_mpoly_target(g, s: int) -> MPoly:
    if isinstance(g, Poly):
        if s != 1:
            raise ValueError("a univariate test polynomial needs s = 1")
        return MPoly(1, {(i,): a for i, a in g.c.items()})
    if g.n != s:
        raise ValueError("test polynomial arity must match the target dimension")
    return g


def _z_tuple(z, r: int):
    if isinstance(z, (int, Fraction, str)):
        z = (z,)
    z = tuple(as_scalar(c) for c in z)
    if len(z) != r:
        raise ValueError("source point arity mismatch")
    return z


def ev_norm(alpha: CoeffPoint, z, g, p: int) -> LogNorm:
    """|g(f_alpha(z))| for the continuous map attached to a product point.

    Builds the transfer polynomial R(S) = g applied to the formal
    components sum_I S_{l,I} z^I, substitutes the rigid coordinates,
    recenters the ball coordinates and takes the iterated Gauss norm
    max_K (|h_K| prod radius^K), all exactly.
    """
    z = _z_tuple(z, alpha.r)
    for c in z:
        if lognorm(c, p) > LogNorm(0):
            raise ValueError("evaluation points must lie in the closed unit polydisk")
    g = _as_mpoly_target(g, alpha.s)
    keys = [key for key, _ in alpha.coords]
    pts = {key: pt for key, pt in alpha.coords}
    nvar = len(keys)
    inner = []
    for l in range(1, alpha.s + 1):
        acc = MPoly(nvar)
        for k, key in enumerate(keys):
            if key[0] != l:
                continue
            zI = Fraction(1)
            for zc, e in zip(z, key[1]):
                zI *= zc ** e
            if zI != 0:
                acc = acc + MPoly.var(nvar, k) * zI
        inner.append(acc)
    R = g.compose_many(inner)
    rig = {}
    balls = {}
    for k, key in enumerate(keys):
        pt = pts[key]
        if pt.kind == "I":
            rig[k] = pt.a
        elif pt.kind == "ball":
            balls[k] = (pt.a, pt.r)
        else:
            raise ValueError("type IV coordinates only support enclosure evaluation")
    R = R.subst_scalars(rig)
    R = R.shift({k: a for k, (a, _) in balls.items()})
    best = LogNorm.bottom()
    for e, c in R.c.items():
        v = lognorm(c, p)
        for k, (_, rad) in balls.items():
            if e[k]:
                v = v + rad.log().scale(e[k])
        if v > best:
            best = v
    return best


def ev_point_s1(alpha: CoeffPoint, z, p: int) -> BerkPoint:
    """The image point itself when s = 1: a rigid point or a ball.

    Center = sum of coordinate centers times z^I; radius = the largest
    coordinate radius scaled by |z^I|.  Characterized against ev_norm by
    |T - w| test polynomials.
    """
    if alpha.s != 1:
        raise ValueError("point reconstruction needs a one-dimensional target")
    z = _z_tuple(z, alpha.r)
    center = Fraction(0)
    rad = Radius.zero_radius()
    for (l, I), pt in alpha.coords:
        zI = Fraction(1)
        for zc, e in zip(z, I):
            zI *= zc ** e
        if pt.kind == "I":
            center += pt.a * zI
        elif pt.kind == "ball":
            center += pt.a * zI
            term = pt.r * Radius.of_scalar(zI, p)
            if term > rad:
                rad = term
        else:
            raise ValueError("type IV coordinates only support enclosure evaluation")
    if rad.zero:
        return rigid(center)
    return ball(center, rad)


def ev_report(alpha: CoeffPoint, z, g, p: int) -> dict:
    """Evaluation summary: the norm |g(f_alpha(z))| plus, for s = 1, the image point."""
    out = {"value": ev_norm(alpha, z, g, p), "rigid": is_rigid(alpha)}
    if alpha.s == 1:
        out["point"] = ev_point_s1(alpha, z, p)
    return out


@dataclass(frozen=True)
class CauchyTail:
    """Assert |a_i - limit| <= rate_i with strictly decreasing rates."""

    rates: tuple  # Radius per prefix index
    limit: Fraction = None


@dataclass(frozen=True)
class EquidistantTail:
    """Assert all pairwise distances equal r exactly."""

    r: Radius = None


@dataclass(frozen=True)
class NestedTail:
    """Assert the balls B(a_i, r_i) are strictly nested with empty intersection."""

    radii: tuple = None


def limit_of_rigid_sequence(prefix, cert, p: int) -> BerkPoint:
    """Limit point asserted by a tail certificate, verified on the prefix."""
    prefix = [as_scalar(a) for a in prefix]
    if not prefix:
        raise ValueError("empty prefix")
    if isinstance(cert, CauchyTail):
        rates = tuple(cert.rates)
        if len(rates) < len(prefix):
            raise ValueError("certificate needs a rate per prefix entry")
        for r1, r2 in zip(rates, rates[1:]):
            if not (r2 < r1):
                raise ValueError("cauchy rates must strictly decrease")
        for i, ai in enumerate(prefix):
            for j in range(i + 1, len(prefix)):
                if not (Radius.of_scalar(prefix[j] - ai, p) <= rates[i]):
                    raise ValueError(
                        f"prefix entries {i},{j} violate the asserted cauchy rate"
                    )
        if cert.limit is not None:
            lim = as_scalar(cert.limit)
            for i, ai in enumerate(prefix):
                if not (Radius.of_scalar(lim - ai, p) <= rates[i]):
                    raise ValueError(f"prefix entry {i} is not within rate of the limit")
            return rigid(lim)
        return type_iv(list(zip(prefix, rates[: len(prefix)])), p)
    if isinstance(cert, EquidistantTail):
        r = cert.r
        if r is None or r.zero:
            raise ValueError("equidistant certificate needs a positive radius")
        for i in range(len(prefix)):
            for j in range(i + 1, len(prefix)):
                if Radius.of_scalar(prefix[i] - prefix[j], p) != r:
                    raise ValueError(
                        f"prefix entries {i},{j} are not at the asserted distance"
                    )
        return ball(prefix[0], r)
    if isinstance(cert, NestedTail):
        radii = tuple(cert.radii)
        if len(radii) < len(prefix):
            raise ValueError("certificate needs a radius per prefix entry")
        return type_iv(list(zip(prefix, radii[: len(prefix)])), p)
    raise TypeError("unknown tail certificate")


def _eval_rigid_map(alpha: CoeffPoint, z):
    """Component values of the polynomial map of a rigid coefficient point."""
    out = []
    for l in range(1, alpha.s + 1):
        acc = Fraction(0)
        for (ll, I), pt in alpha.coords:
            if ll != l:
                continue
            zI = Fraction(1)
            for zc, e in zip(z, I):
                zI *= zc ** e
            acc += pt.a * zI
        out.append(acc)
    return tuple(out)


def montel_limit_demo(family, certs: dict, panel, p: int):
    """Coordinatewise limit of a family of rigid coefficient points.

    ``certs`` maps coordinate labels (l, I) to tail certificates for the
    coordinates that actually move; constant coordinates need none.  The
    report compares |g(f_n(z))| against the limit evaluation on the panel
    and records from which index on they agree.
    """
    if not family:
        raise ValueError("empty family")
    dims = (family[0].r, family[0].s, family[0].delta)
    if any((a.r, a.s, a.delta) != dims for a in family):
        raise ValueError("family members must share dimensions")
    if any(not is_rigid(a) for a in family):
        raise ValueError("family members must be rigid coefficient points")
    r, s, delta = dims
    coords = {}
    for key in index_set(r, s, delta):
        seq = [a.coord(*key).a for a in family]
        if all(v == seq[0] for v in seq):
            coords[key] = rigid(seq[0])
            continue
        cert = certs.get(key)
        if cert is None:
            raise ValueError(f"moving coordinate {key} needs a tail certificate")
        coords[key] = limit_of_rigid_sequence(seq, cert, p)
    alpha = make_coeff_point(r, s, delta, coords, p)
    rows = []
    agree_from = {}
    for gi, (g, z) in enumerate(panel):
        z = _z_tuple(z, r)
        target = ev_norm(alpha, z, g, p)
        g_m = _as_mpoly_target(g, s)
        first = None
        seq_rows = []
        for n, a_n in enumerate(family):
            w = _eval_rigid_map(a_n, z)
            lval = lognorm(g_m.eval(w), p)
            eq = lval == target
            if eq and first is None:
                first = n
            if not eq:
                first = None
            seq_rows.append({"n": n, "family": lval, "limit": target, "equal": eq})
        rows.append({"panel_index": gi, "rows": seq_rows, "agree_from": first})
        agree_from[gi] = first
    return alpha, {"panel": rows, "agree_from": agree_from}
