"""Dynamical Green functions with certified error, and the bounded-lift probe.

For a normalized homogeneous lift F of degree d the escape averages
G_n(z) = d^(-n) log|F^n(z)| form a Cauchy sequence with explicit gaps
|G_{n+1} - G_n| <= C1/d^n, where p^(-C1) |z|^d <= |F(z)| <= |z|^d is
certified exactly: by the resultant for a pair of binary forms, by a
user-supplied cofactor identity T_i^s = sum_j lam[i][j] F_j otherwise.
All values are exact rationals in log_p units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import (
    LogNorm,
    MPoly,
    Poly,
    Radius,
    as_scalar,
    count_zeros_in_disk,
    lognorm,
    newton_polygon,
    resultant,
    taylor_shift,
)
from .maps import ProjMap
from .points import ball, join, points_equal, rigid, seminorm_eval
from .tree import StdAffinoid, in_affinoid, shilov_points, sup_norm


@dataclass(frozen=True)
class NullstellensatzCert:
    """Cofactor data: T_i^s = sum_j lambdas[i][j] * F_j, exact identity."""

    s: int
    lambdas: tuple  # (N+1) x (N+1) MPoly matrix


@dataclass(frozen=True)
class GreenContext:
    f: ProjMap
    d: int
    C1: Fraction  # log_p units, >= 0
    cert: str  # "resultant" or "nullstellensatz"


@dataclass(frozen=True)
class GreenValue:
    value: Fraction
    n_used: int
    error_bound: Fraction


def make_context(f: ProjMap, p: int, certificate: NullstellensatzCert = None) -> GreenContext:
    """Certify the two-sided escape inequality and freeze its constant.

    For a pair of binary forms the classical cofactor identities give
    |F(z)| >= |Res(F0, F1)| |z|^d, so C1 = -log|Res|.  In more variables a
    cofactor certificate must be supplied and is verified exactly.
    """
    nv = f.nvars
    if f.degree < 2:
        raise ValueError("Green functions need degree at least 2")
    if nv == 2:
        if certificate is not None:
            raise ValueError("binary maps are certified by the resultant; drop the certificate")
        res = resultant(f.forms[0], f.forms[1], f.degree)
        if res == 0:
            raise ValueError("forms share a projective zero")
        l = lognorm(res, p)
        C1 = -l.value
        if C1 < 0:
            raise ValueError("lift is not normalized (|Res| > 1)")
        return GreenContext(f, f.degree, C1, "resultant")
    if certificate is None:
        raise ValueError("maps in three or more variables need a cofactor certificate")
    s, lams = certificate.s, certificate.lambdas
    if s < f.degree:
        raise ValueError("certificate exponent must be at least the degree")
    if len(lams) != nv or any(len(row) != nv for row in lams):
        raise ValueError("certificate must be a square cofactor matrix")
    C1max = None
    for i in range(nv):
        acc = MPoly(nv)
        for j in range(nv):
            lam = lams[i][j]
            if not lam.is_zero and not lam.is_homogeneous(s - f.degree):
                raise ValueError("cofactors must be homogeneous of degree s - d")
            acc = acc + lam * f.forms[j]
            l = lam.max_coeff_lognorm(p)
            if not l.is_bottom and (C1max is None or l > C1max):
                C1max = l
        ti = MPoly(nv, {tuple(s if k == i else 0 for k in range(nv)): 1})
        if acc != ti:
            raise ValueError(f"certificate identity fails for coordinate {i}")
    if C1max is None or C1max.value < 0:
        raise ValueError("certificate cofactors cannot all have norm < 1")
    return GreenContext(f, f.degree, C1max.value, "nullstellensatz")


def _vec_lognorm(w, p: int) -> LogNorm:
    out = LogNorm.bottom()
    for c in w:
        l = lognorm(c, p)
        if l > out:
            out = l
    return out


def _steps_for(ctx: GreenContext, eps: Fraction) -> int:
    if ctx.C1 == 0:
        return 0
    n = 0
    bound = ctx.C1
    while bound > eps:
        n += 1
        bound = Fraction(ctx.C1, ctx.d ** n)
    return n


def green_eval(ctx: GreenContext, z, eps, p: int) -> GreenValue:
    """G_n(z) with the smallest n certified to be within eps of the limit."""
    eps = as_scalar(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    w = tuple(as_scalar(c) for c in z)
    if len(w) != ctx.f.nvars:
        raise ValueError("point arity does not match the map")
    if all(c == 0 for c in w):
        raise ValueError("the Green function is not defined at the origin")
    n = _steps_for(ctx, eps)
    for _ in range(n):
        w = tuple(F.eval(w) for F in ctx.f.forms)
    l = _vec_lognorm(w, p)
    value = Fraction(l.value, ctx.d ** n)
    return GreenValue(value, n, Fraction(ctx.C1, ctx.d ** n))


def green_gap_sequence(ctx: GreenContext, z, n_max: int, p: int):
    """Exact gaps |G_{n+1} - G_n| together with the certified bounds C1/d^n."""
    w = tuple(as_scalar(c) for c in z)
    if all(c == 0 for c in w):
        raise ValueError("the Green function is not defined at the origin")
    values = []
    for n in range(n_max + 2):
        l = _vec_lognorm(w, p)
        values.append(Fraction(l.value, ctx.d ** n))
        w = tuple(F.eval(w) for F in ctx.f.forms)
    out = []
    for n in range(n_max + 1):
        gap = abs(values[n + 1] - values[n])
        out.append((n, gap, Fraction(ctx.C1, ctx.d ** n)))
    return out


def green_cauchy_check(ctx: GreenContext, z, n_max: int, p: int):
    """Gap sequence plus a pass flag for each certified inequality."""
    rows = green_gap_sequence(ctx, z, n_max, p)
    return [(n, gap, bound, gap <= bound) for n, gap, bound in rows]


def _iterated_forms(f: ProjMap, n: int):
    cur = f.forms
    for _ in range(n - 1):
        cur = tuple(F.compose_many(cur) for F in f.forms)
    return cur


def _h_value(P: Poly, Q: Poly, x, p: int) -> LogNorm:
    return max(seminorm_eval(P, x, p), seminorm_eval(Q, x, p))


def _removed_sphere_count(S: Poly, A: StdAffinoid, c, sphere: Radius, p: int) -> int:
    """Roots of S on the sphere |x - c| = r that sit inside removed interiors."""
    n = 0
    for d in A.removed:
        if Radius.of_scalar(d.a - c, p) == sphere:
            n += count_zeros_in_disk(S, d.a, d.r, p, strict=True)
    return n


@dataclass(frozen=True)
class InfMaxResult:
    value: LogNorm
    exact: bool
    witness: object = None  # a point of the skeleton, or the sphere of a dip
    where: str = "skeleton"  # "skeleton" | "dip-at-point" | "dip"


_MIXED_DEPTH = 60  # depth cap for rational direction descent into mixed spheres


def _dip_candidates(S, T, c, A, p, depth, slope_cap, out):
    """Collect dip candidates for S-roots on spheres centered at c.

    Appends (value, witness, label) triples to ``out``; returns False when
    some sphere carries roots of both polynomials that rational direction
    descent cannot separate, so the minimum may live below the candidates.
    """
    exact = True
    poly = newton_polygon(taylor_shift(S, c), p)
    if poly.ord_at_zero > 0 and in_affinoid(rigid(c), A, p):
        out.append((lognorm(T(c), p), rigid(c), "dip-at-point"))
    t_poly = newton_polygon(taylor_shift(T, c), p)
    t_mults = {slope: mult for slope, mult in t_poly.segments}
    for slope, mult in poly.segments:
        if slope_cap is not None and not (slope < slope_cap):
            continue
        sphere = Radius(slope)
        x = ball(c, sphere)
        if not in_affinoid(x, A, p):
            continue
        n_valid = mult - _removed_sphere_count(S, A, c, sphere, p)
        if n_valid <= 0:
            continue
        # in directions free of T-roots the dip bottoms at |T| of the sphere point
        out.append((seminorm_eval(T, x, p), x, "dip"))
        m_valid = t_mults.get(slope, 0) - _removed_sphere_count(T, A, c, sphere, p)
        if m_valid > 0:
            if not _resolve_mixed_sphere(S, T, c, slope, mult, t_mults[slope], A, p, depth, out):
                exact = False
    return exact


def _resolve_mixed_sphere(S, T, c, slope, s_at, t_at, A, p, depth, out):
    """Descend into the rational directions of a sphere carrying both root sets.

    Directions at a sphere of integral radius have representatives
    c + u p^(-e); roots in distinct directions never interact, so the
    descent separates clusters until they split or leave the rational
    direction set (conjugate clusters), where it reports failure.
    """
    if depth <= 0 or slope.denominator != 1:
        return False
    e = int(slope)
    found_s = found_t = 0
    ok = True
    for u in range(1, p):
        cu = c + Fraction(u) * Fraction(p) ** (-e)
        n_s = count_zeros_in_disk(S, cu, Radius(e), p, strict=True)
        n_t = count_zeros_in_disk(T, cu, Radius(e), p, strict=True)
        found_s += n_s
        found_t += n_t
        if n_s and n_t:
            ok = _dip_candidates(S, T, cu, A, p, depth - 1, Fraction(e), out) and ok
            ok = _dip_candidates(T, S, cu, A, p, depth - 1, Fraction(e), out) and ok
    # roots left in non-rational directions can only mix with each other
    left_s = s_at - found_s
    left_t = t_at - found_t
    if left_s > 0 and left_t > 0:
        return False
    return ok


def inf_max_over_affinoid(P: Poly, Q: Poly, A: StdAffinoid, p: int) -> InfMaxResult:
    """Exact inf over the affinoid of max(|P|, |Q|), when resolvable.

    The minimum is attained either at a vertex of the boundary skeleton or
    at the bottom of a dip toward roots of one polynomial, where the value
    is the locally constant norm of the other.  Dips are enumerated from
    rational anchors (outer and removed centers) through Newton polygon
    spheres; spheres carrying roots of both polynomials are split along
    their rational directions recursively.  ``exact`` is False only when
    clusters of both root sets share a direction with no rational
    representative (or sit beyond the descent depth cap), in which case
    the value is an upper bound for the inf.
    """
    if P.is_zero or Q.is_zero:
        raise ValueError("zero polynomial")
    anchors = [A.outer.a] + [d.a for d in A.removed]
    # skeleton vertices: Shilov points and their pairwise joins
    verts = list(shilov_points(A))
    base = list(verts)
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            w = join(base[i], base[j], p)
            if not any(points_equal(w, v, p) for v in verts):
                verts.append(w)
    candidates = [(_h_value(P, Q, v, p), v, "skeleton") for v in verts]
    exact = True
    for S, T in ((P, Q), (Q, P)):
        for c in anchors:
            exact = _dip_candidates(S, T, c, A, p, _MIXED_DEPTH, None, candidates) and exact
    value, witness, where = min(candidates, key=lambda t: t[0])
    return InfMaxResult(value, exact, witness, where)


def bounded_lift_probe(ctx: GreenContext, A: StdAffinoid, n_max: int, p: int) -> dict:
    """Track sup and inf of max(|F^n_0|, |F^n_1|) over an affinoid chart piece.

    The section z -> (z, 1) identifies the affinoid with a piece of the
    cone; per n the report gives exact sup, inf and their gap.  After
    renormalizing each iterate by its sup (the scalar freedom of lifts),
    the window test asks the gap to stay within 2*C1.  Verdicts are
    finite-horizon statements only:

    * ``bounded``          every gap up to n_max is within the window,
    * ``unbounded-trend``  the gap exceeds the window and keeps growing
                           at a doubling trend,
    * ``inconclusive``     everything else, including unresolved dips.
    """
    if ctx.f.nvars != 2:
        raise ValueError("the lift probe works on self-maps of the line")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    window = LogNorm(2 * ctx.C1)
    # certified floor: |F^n(z,1)| >= p^(-C1 (d^n-1)/(d-1)) |(z,1)|^(d^n),
    # and the cone norm max(|z|, 1) has an exact minimum over the affinoid
    cone_min = inf_max_over_affinoid(Poly({1: 1}), Poly({0: 1}), A, p).value
    rows = []
    gaps = []
    all_exact = True
    for n in range(1, n_max + 1):
        forms = _iterated_forms(ctx.f, n)
        P = forms[0].dehomogenize()
        Q = forms[1].dehomogenize()
        sup0, sup1 = sup_norm(P, A, p), sup_norm(Q, A, p)
        sup_res = sup0 if sup0.value >= sup1.value else sup1
        sup = sup_res.value
        low = inf_max_over_affinoid(P, Q, A, p)
        if not low.exact:
            floor = cone_min.scale(ctx.d ** n) + LogNorm(
                -Fraction(ctx.C1 * (ctx.d ** n - 1), ctx.d - 1)
            )
            if low.value == floor:
                # the unresolved dips cannot go below the certified floor
                low = InfMaxResult(low.value, True, low.witness, low.where)
        all_exact = all_exact and low.exact
        gap = sup - low.value
        gaps.append(gap)
        rows.append(
            {
                "n": n,
                "sup": sup,
                "sup_witness": sup_res.witness,
                "inf": low.value,
                "inf_witness": low.witness,
                "inf_attained": low.where,
                "gap": gap,
                "renormalized_range": (low.value - sup, LogNorm(0)),
                "exact": low.exact,
            }
        )
    verdict = _lift_verdict(gaps, window, all_exact, n_max)
    return {"C1": ctx.C1, "window": window, "per_n": rows, "verdict": verdict}


def _lift_verdict(gaps, window, all_exact, n_max):
    if not all_exact:
        return "inconclusive"
    if all(g <= window for g in gaps):
        return "bounded"
    half = max(1, n_max // 2)
    nondecreasing = all(b >= a for a, b in zip(gaps, gaps[1:]))
    if (
        nondecreasing
        and gaps[-1] > window
        and gaps[-1] >= gaps[half - 1].scale(2)
    ):
        return "unbounded-trend"
    return "inconclusive"
