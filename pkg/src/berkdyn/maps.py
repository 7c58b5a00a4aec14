"""Endomorphisms of the projective line: normalization, reduction, dynamics.

A map of degree d is a pair of binary forms without common projective zero,
normalized so every coefficient has log-norm <= 0 and at least one equals 0.
Closed balls push forward to closed balls under polynomial chart
representatives; rational representatives must be chart-subdivided first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .field import (
    LogNorm,
    Poly,
    Radius,
    as_scalar,
    count_zeros_in_disk,
    lognorm,
    resultant,
    taylor_shift,
    val,
)
from .points import BerkPoint, ball, gauss, infinity, points_equal, rigid

INF = "inf"


@dataclass(frozen=True)
class ProjPoint:
    """A rigid point of the projective line in canonical homogeneous form."""

    x0: Fraction
    x1: Fraction

    @classmethod
    def of(cls, z) -> "ProjPoint":
        if isinstance(z, ProjPoint):
            return z
        if z == INF:
            return cls(Fraction(1), Fraction(0))
        return cls(as_scalar(z), Fraction(1))

    @classmethod
    def make(cls, x0, x1) -> "ProjPoint":
        x0, x1 = as_scalar(x0), as_scalar(x1)
        if x0 == 0 and x1 == 0:
            raise ValueError("(0 : 0) is not a projective point")
        if x1 != 0:
            return cls(x0 / x1, Fraction(1))
        return cls(Fraction(1), Fraction(0))

    @property
    def is_infinity(self) -> bool:
        return self.x1 == 0

    def value(self):
        return INF if self.is_infinity else self.x0

    def __repr__(self):
        return "inf" if self.is_infinity else str(self.x0)


class ChartError(ValueError):
    """The chosen chart representative is not polynomial on the given region."""


class PoleInBall(ChartError):
    """A pole of the chart representative lies inside the ball."""


@dataclass(frozen=True)
class ProjMap:
    """Normalized endomorphism given by homogeneous forms of common degree."""

    forms: tuple  # MPoly forms, len = nvars
    degree: int

    @property
    def nvars(self) -> int:
        return len(self.forms)


def normalize_lift(forms, p: int, check_degree: bool = True) -> ProjMap:
    """Scale a tuple of forms so the largest coefficient norm is exactly 1.

    For a pair of binary forms a common projective zero is rejected through
    the resultant; higher-dimensional tuples are certified later when a
    Green context is built.
    """
    forms = tuple(forms)
    if len(forms) < 2:
        raise ValueError("need at least two forms")
    nv = forms[0].n
    if any(F.n != nv for F in forms):
        raise ValueError("forms must share the same variables")
    if len(forms) != nv:
        raise ValueError("need exactly one form per homogeneous coordinate")
    d = max(F.total_degree() for F in forms)
    if check_degree and d < 2:
        raise ValueError("endomorphisms here have degree at least 2")
    for F in forms:
        if F.is_zero or not F.is_homogeneous(d):
            raise ValueError("forms must be nonzero and homogeneous of common degree")
    if nv == 2:
        if resultant(forms[0], forms[1], d) == 0:
            raise ValueError("forms share a projective zero (resultant vanishes)")
    m = None
    for F in forms:
        l = F.max_coeff_lognorm(p)
        if m is None or l > m:
            m = l
    # lognorm is -v_p: dividing by p^(-m) moves the largest coefficient to norm 1
    scale = Fraction(p) ** int(m.value)
    return ProjMap(tuple(F * scale for F in forms), d)


def chart_poly(f: ProjMap):
    """Dehomogenized polynomial representative z -> F0(z,1)/c when F1 = c Y^d."""
    if f.nvars != 2:
        raise ValueError("chart representatives exist for self-maps of the line")
    F1 = f.forms[1]
    if set(F1.c) == {(0, f.degree)}:
        c = F1.c[(0, f.degree)]
        return f.forms[0].dehomogenize() * (1 / c)
    return None


def apply_rigid(f: ProjMap, x) -> ProjPoint:
    """Exact evaluation at a rigid projective point, chart handled."""
    if f.nvars != 2:
        raise ValueError("apply_rigid works on the line")
    pt = ProjPoint.of(x)
    y0 = f.forms[0].eval([pt.x0, pt.x1])
    y1 = f.forms[1].eval([pt.x0, pt.x1])
    return ProjPoint.make(y0, y1)


def pushforward(f, x: BerkPoint, p: int) -> BerkPoint:
    """Image of a point of types I-III under a polynomial chart map.

    The image of the closed ball B(a, r) is the closed ball centered at
    phi(a) with radius max_{i>=1} |c_i| r^i, c = phi recentered at a; this
    is the exact characterization |Q(image)| = |Q o phi|(source) for all Q.
    """
    if isinstance(f, ProjMap):
        phi = chart_poly(f)
        if phi is None:
            den = f.forms[1].dehomogenize()
            if x.kind in ("I", "ball"):
                a = x.a
                r = Radius.zero_radius() if x.kind == "I" else x.r
                if count_zeros_in_disk(den, a, r, p) > 0:
                    raise PoleInBall(
                        "a pole of the chart representative lies inside the ball; "
                        "subdivide into pole-free chart pieces"
                    )
            raise ChartError(
                "map is rational on this chart; subdivide charts so each ball "
                "meets a polynomial representative"
            )
    elif isinstance(f, Poly):
        phi = f
    else:
        raise TypeError("pushforward expects a ProjMap or a chart polynomial")
    if x.kind == "inf":
        return infinity() if phi.degree >= 1 else rigid(phi.coeff(0))
    if x.kind == "IV":
        raise ValueError("type IV pushforward is not supported; use the prefix balls")
    if x.kind == "I":
        return rigid(phi(x.a))
    c = taylor_shift(phi, x.a)
    rlog = x.r.log()
    best = None
    for i, a in c.c.items():
        if i == 0:
            continue
        v = lognorm(a, p) + rlog.scale(i)
        if best is None or v > best:
            best = v
    if best is None or best.is_bottom:
        return rigid(c.coeff(0))
    return ball(c.coeff(0), Radius.from_log(best))


@dataclass(frozen=True)
class ResidueMap:
    """Coefficientwise reduction of a normalized map over the residue field."""

    p: int
    forms: tuple  # dicts {(i, j): residue int}
    degree: int
    degenerate: bool

    def dehom_coeffs(self, which: int):
        """Dense mod-p coefficient list of the dehomogenized form."""
        d = self.degree
        out = [0] * (d + 1)
        for (i, _), c in self.forms[which].items():
            out[i] = c
        return out

    def dehom_str(self, var: str = "z") -> str:
        num = _fp_poly_str(self.dehom_coeffs(0), var)
        den = _fp_poly_str(self.dehom_coeffs(1), var)
        return num if den == "1" else f"({num})/({den})"


def _fp_poly_str(coeffs, var):
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c}")
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}^{i}" if i > 1 else f"{head}{var}")
    return " + ".join(parts) if parts else "0"


def _reduce_coeff(c: Fraction, p: int) -> int:
    if val(c, p) is not None and val(c, p) < 0:
        raise ValueError("coefficient has norm > 1; normalize the lift first")
    if c == 0:
        return 0
    return (c.numerator * pow(c.denominator, -1, p)) % p


def _fp_gcd_degree(a, b, p):
    """Degree of gcd of two dense F_p coefficient lists (low-to-high)."""

    def deg(u):
        d = -1
        for i, c in enumerate(u):
            if c % p:
                d = i
        return d

    a, b = list(a), list(b)
    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        lead = (a[da] * pow(b[db], -1, p)) % p
        for k in range(db + 1):
            a[da - db + k] = (a[da - db + k] - lead * b[k]) % p
        if deg(a) < deg(b):
            a, b = b, a
    return deg(a)


def reduce_map(f: ProjMap, p: int):
    """Residue-field reduction and the good-reduction verdict.

    The verdict is the resultant criterion: good reduction iff |Res| = 1.
    Degeneracy of the reduced pair is decided independently on the residue
    side (vanishing form, common factor, or common root at infinity).
    """
    if f.nvars != 2:
        raise ValueError("reduction implemented for self-maps of the line")
    d = f.degree
    red = tuple({e: _reduce_coeff(c, p) for e, c in F.c.items() if _reduce_coeff(c, p)} for F in f.forms)
    degenerate = False
    if not red[0] or not red[1]:
        degenerate = True
    else:
        a = [0] * (d + 1)
        b = [0] * (d + 1)
        for (i, _), c in red[0].items():
            a[i] = c
        for (i, _), c in red[1].items():
            b[i] = c
        if a[d] == 0 and b[d] == 0:
            degenerate = True  # common root at infinity
        elif _fp_gcd_degree(a, b, p) > 0:
            degenerate = True
    rmap = ResidueMap(p, red, d, degenerate)
    good = lognorm(resultant(f.forms[0], f.forms[1], d), p) == LogNorm(0)
    return rmap, good


def tangent_map_at_gauss(f: ProjMap, p: int) -> ResidueMap:
    """Residue map describing the tangent action when the Gauss point is fixed."""
    img = pushforward(f, gauss(), p)
    if not points_equal(img, gauss(), p):
        raise ValueError("the Gauss point is not mapped to itself")
    rmap, _ = reduce_map(f, p)
    return rmap


def chordal(x, y, p: int) -> LogNorm:
    """log_p of the chordal distance between rigid projective points; <= 0."""
    a, b = ProjPoint.of(x), ProjPoint.of(y)
    num = lognorm(a.x0 * b.x1 - a.x1 * b.x0, p)
    na = max(lognorm(a.x0, p), lognorm(a.x1, p))
    nb = max(lognorm(b.x0, p), lognorm(b.x1, p))
    return num - na - nb


def orbit(f: ProjMap, x: BerkPoint, n: int, p: int):
    """[x, f x, ..., f^n x] through repeated pushforward."""
    if n < 0:
        raise ValueError("orbit length must be nonnegative")
    out = [x]
    for _ in range(n):
        out.append(pushforward(f, out[-1], p))
    return out


@dataclass(frozen=True)
class ProbeConfig:
    depth: int = 5
    radii: tuple = (-1, -2, -3)  # log-norm exponents of sampled pair offsets
    pairs_per_radius: int = 3
    seed: int = 0


def equicontinuity_probe(f: ProjMap, x0, cfg: ProbeConfig, p: int) -> dict:
    """Finite-sample expansion probe around a rigid point.

    For sampled rigid pairs near x0 the probe tracks, per iterate, the
    growth exponent of affine representative distances and of chordal
    distances (both in log_p units, relative to the starting distance).
    The verdict never certifies membership in a Fatou or Julia set:

    * ``bounded``     every affine exponent stays <= 0 up to the depth,
    * ``expanding``   the affine exponents grow at a geometric trend,
    * ``inconclusive`` anything else.
    """
    x0 = as_scalar(x0)
    rng = random.Random(cfg.seed)
    pairs = []
    for e in cfg.radii:
        for _ in range(cfg.pairs_per_radius):
            w1 = _unit_int(rng, p)
            w2 = _unit_int(rng, p)
            t1 = Fraction(w1) * Fraction(p) ** (-e)
            t2 = Fraction(w2) * Fraction(p) ** (-e)
            if t1 == t2:
                t2 += Fraction(p) ** (-e + 1)
            pairs.append((ProjPoint.of(x0 + t1), ProjPoint.of(x0 + t2)))
    base_aff = [_affine_dist(u, v, p) for u, v in pairs]
    base_ch = [chordal(u, v, p) for u, v in pairs]
    per_n = []
    aff_exps = []
    cur = list(pairs)
    for n in range(1, cfg.depth + 1):
        cur = [(apply_rigid(f, u), apply_rigid(f, v)) for u, v in cur]
        aff = None
        ch = None
        for (u, v), b_aff, b_ch in zip(cur, base_aff, base_ch):
            d_ch = chordal(u, v, p)
            if not d_ch.is_bottom and not b_ch.is_bottom:
                g = (d_ch - b_ch).value
                ch = g if ch is None or g > ch else ch
            d_aff = _affine_dist(u, v, p)
            if d_aff is not None and b_aff is not None and not d_aff.is_bottom and not b_aff.is_bottom:
                g = (d_aff - b_aff).value
                aff = g if aff is None or g > aff else aff
        per_n.append({"n": n, "affine": aff, "chordal": ch})
        aff_exps.append(aff)
    verdict = _probe_verdict(aff_exps, cfg.depth)
    return {"per_n": per_n, "verdict": verdict}


def _unit_int(rng, p):
    while True:
        w = rng.randrange(1, p * p * p)
        if w % p:
            return w


def _affine_dist(u: ProjPoint, v: ProjPoint, p: int):
    if u.is_infinity or v.is_infinity:
        return None
    return lognorm(u.x0 - v.x0, p)


def _probe_verdict(exps, depth):
    known = [e for e in exps if e is not None]
    if not known:
        return "inconclusive"
    if all(e <= 0 for e in known):
        return "bounded"
    half = max(1, depth // 2)
    last = exps[-1]
    mid = exps[half - 1]
    if (
        last is not None
        and mid is not None
        and last > 0
        and last - mid >= depth - half
        and all(a is None or b is None or b >= a for a, b in zip(exps[half - 1:], exps[half:]))
    ):
        return "expanding"
    return "inconclusive"
