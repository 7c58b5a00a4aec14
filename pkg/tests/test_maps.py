from fractions import Fraction

import pytest

from berkdyn.field import LogNorm, MPoly, Radius, lognorm, resultant
from berkdyn.maps import (
    ChartError,
    PoleInBall,
    ProbeConfig,
    apply_rigid,
    chordal,
    equicontinuity_probe,
    normalize_lift,
    orbit,
    pushforward,
    reduce_map,
    tangent_map_at_gauss,
)
from berkdyn.points import ball, gauss, points_equal, seminorm_eval
from berkdyn.serialize import parse_poly_sugar, poly_to_projmap

from conftest import rand_poly, rand_scalar


def rand_poly_map(rng, p, d):
    """Random degree-d map with polynomial chart: F1 = u Y^d."""
    coeffs = {d: rand_scalar(rng, p)}
    while coeffs[d] == 0:
        coeffs[d] = rand_scalar(rng, p)
    for i in range(d):
        if rng.random() < 0.7:
            coeffs[i] = rand_scalar(rng, p)
    F0 = MPoly(2, {(i, d - i): c for i, c in coeffs.items() if c != 0})
    u = rand_scalar(rng, p)
    while u == 0:
        u = rand_scalar(rng, p)
    F1 = MPoly(2, {(0, d): u})
    return normalize_lift((F0, F1), p)


def rand_general_map(rng, p, d):
    """Random degree-d pair of forms with nonzero resultant."""
    while True:
        forms = []
        for _ in range(2):
            c = {}
            for i in range(d + 1):
                if rng.random() < 0.6:
                    c[(i, d - i)] = rand_scalar(rng, p)
            if not c:
                c = {(0, d): Fraction(1)}
            forms.append(MPoly(2, c))
        if forms[0].is_zero or forms[1].is_zero:
            continue
        if resultant(forms[0], forms[1], d) != 0:
            return normalize_lift(forms, p)


# ------------------------------------------------------------ worked examples


def test_normalize_examples():
    p = 2
    f = normalize_lift((MPoly(2, {(2, 0): 2}), MPoly(2, {(0, 2): 2})), p)
    assert f.forms[0].c == {(2, 0): Fraction(1)}
    f2 = normalize_lift((MPoly(2, {(2, 0): Fraction(1, 2)}), MPoly(2, {(0, 2): 1})), p)
    assert f2.forms[0].c == {(2, 0): Fraction(1)} and f2.forms[1].c == {(0, 2): Fraction(2)}
    f3 = normalize_lift((MPoly(2, {(2, 0): 1}), MPoly(2, {(0, 2): 1})), p)
    assert f3.forms[0].c == {(2, 0): Fraction(1)}
    with pytest.raises(ValueError):
        normalize_lift((MPoly(2, {(2, 0): 1}), MPoly(2, {(2, 0): 2})), p)


def test_apply_rigid_examples():
    p = 2
    f = poly_to_projmap(parse_poly_sugar("z^2+2"), p)
    assert apply_rigid(f, 2).value() == 6
    assert apply_rigid(f, 1).value() == 3
    fz2 = poly_to_projmap(parse_poly_sugar("z^2"), p)
    assert apply_rigid(fz2, "inf").is_infinity


def test_pushforward_examples():
    p = 2
    fz2 = poly_to_projmap(parse_poly_sugar("z^2"), p)
    assert points_equal(pushforward(fz2, gauss(), p), gauss(), p)
    f = poly_to_projmap(parse_poly_sugar("z^2+2"), p)
    img = pushforward(f, ball(0, Radius(-1)), p)
    assert points_equal(img, ball(2, Radius(-2)), p)
    img2 = pushforward(parse_poly_sugar("2*z"), gauss(), p)
    assert points_equal(img2, ball(0, Radius(-1)), p)


def test_pushforward_pole_errors():
    p = 2
    # f(z) = (z^2+1)/z has a pole at 0
    f = normalize_lift((MPoly(2, {(2, 0): 1, (0, 2): 1}), MPoly(2, {(1, 1): 1})), p)
    with pytest.raises(PoleInBall):
        pushforward(f, gauss(), p)
    with pytest.raises(ChartError):
        pushforward(f, ball(1, Radius(-2)), p)  # pole-free ball, still rational


def test_reduce_examples():
    p = 2
    f1 = normalize_lift((MPoly(2, {(2, 0): 1, (0, 2): 2}), MPoly(2, {(0, 2): 1})), p)
    rm, good = reduce_map(f1, p)
    assert good and not rm.degenerate
    assert rm.dehom_str() == "z^2"
    f2 = normalize_lift((MPoly(2, {(2, 0): 1}), MPoly(2, {(0, 2): 2})), p)
    rm2, good2 = reduce_map(f2, p)
    assert not good2 and rm2.degenerate
    assert lognorm(resultant(f2.forms[0], f2.forms[1], 2), p) == LogNorm(-2)
    f3 = normalize_lift((MPoly(2, {(2, 0): 1}), MPoly(2, {(0, 2): 1})), p)
    assert reduce_map(f3, p)[1]


def test_tangent_map_examples():
    p = 2
    assert tangent_map_at_gauss(poly_to_projmap(parse_poly_sugar("z^2+2"), p), p).dehom_str() == "z^2"
    assert tangent_map_at_gauss(poly_to_projmap(parse_poly_sugar("z^2"), p), p).dehom_str() == "z^2"
    assert (
        tangent_map_at_gauss(poly_to_projmap(parse_poly_sugar("z^2+z"), p), p).dehom_str()
        == "z^2 + z"
    )
    with pytest.raises(ValueError):
        tangent_map_at_gauss(poly_to_projmap(parse_poly_sugar("z^2/2"), p), p)


def test_chordal_examples():
    p = 2
    assert chordal(0, 1, p) == LogNorm(0)
    assert chordal(0, 2, p) == LogNorm(-1)
    assert chordal(1, 1, p).is_bottom


def test_orbit_examples():
    p = 2
    fz2 = poly_to_projmap(parse_poly_sugar("z^2"), p)
    orb = orbit(fz2, gauss(), 3, p)
    assert len(orb) == 4 and all(points_equal(x, gauss(), p) for x in orb)
    orb2 = orbit(fz2, ball(0, Radius(-1)), 2, p)
    assert orb2[1].r == Radius(-2) and orb2[2].r == Radius(-4)
    f = poly_to_projmap(parse_poly_sugar("z^2+2"), p)
    orb3 = orbit(f, ball(2, Radius(-2)), 1, p)
    assert points_equal(orb3[1], ball(6, Radius(-4)), p)


def test_equicontinuity_probe_examples():
    p = 2
    cfg = ProbeConfig(depth=5)
    fz2 = poly_to_projmap(parse_poly_sugar("z^2"), p)
    assert equicontinuity_probe(fz2, 0, cfg, p)["verdict"] == "bounded"
    assert equicontinuity_probe(fz2, 1, cfg, p)["verdict"] == "bounded"
    fhalf = poly_to_projmap(parse_poly_sugar("z^2/2"), p)
    rep = equicontinuity_probe(fhalf, 1, cfg, p)
    assert rep["verdict"] == "expanding"
    # the affine growth trend is geometric: dominated by d^n
    exps = [row["affine"] for row in rep["per_n"]]
    assert exps[-1] >= 2 * exps[-2] - exps[-3]


# ------------------------------------------------------------- properties


def test_pushforward_functoriality(rng):
    for _ in range(150):
        p = rng.choice([2, 3, 5])
        phi = rand_poly(rng, p, max_deg=3)
        if phi.is_zero or phi.degree < 1:
            continue
        Q = rand_poly(rng, p, max_deg=3)
        delta = rng.choice([-1, 0, 0, 1])  # include generic (type III) radii
        x = ball(
            rand_scalar(rng, p),
            Radius(Fraction(rng.randint(-6, 2), rng.choice([1, 2])), delta),
        )
        left = seminorm_eval(Q, pushforward(phi, x, p), p)
        right = seminorm_eval(Q.compose(phi), x, p)
        assert left == right


def test_pushforward_composition(rng):
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        phi = rand_poly(rng, p, max_deg=2)
        psi = rand_poly(rng, p, max_deg=2)
        if phi.degree < 1 or psi.degree < 1:
            continue
        x = ball(rand_scalar(rng, p), Radius(rng.randint(-4, 2)))
        via_compose = pushforward(phi.compose(psi), x, p)
        stepwise = pushforward(phi, pushforward(psi, x, p), p)
        assert points_equal(via_compose, stepwise, p)


def test_good_reduction_fixes_gauss(rng):
    seen_good = 0
    for _ in range(120):
        p = rng.choice([2, 3, 5])
        f = rand_poly_map(rng, p, rng.choice([2, 3]))
        rm, good = reduce_map(f, p)
        assert good == (not rm.degenerate)
        if good:
            seen_good += 1
            assert points_equal(pushforward(f, gauss(), p), gauss(), p)
    assert seen_good >= 5  # the sampler must actually exercise the good case


def test_reduction_verdict_on_general_maps(rng):
    for _ in range(80):
        p = rng.choice([2, 3, 5])
        f = rand_general_map(rng, p, rng.choice([2, 3]))
        rm, good = reduce_map(f, p)
        # resultant verdict agrees with the residue-side degeneracy check
        assert good == (not rm.degenerate)


def test_chordal_properties(rng):
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        xs = [rand_scalar(rng, p), rand_scalar(rng, p)]
        if rng.random() < 0.2:
            xs[1] = "inf"
        d1 = chordal(xs[0], xs[1], p)
        d2 = chordal(xs[1], xs[0], p)
        assert d1 == d2
        assert d1.is_bottom or d1 <= LogNorm(0)
        # invariance under the chart swap z -> 1/z
        def invert(v):
            if v == "inf":
                return Fraction(0)
            if v == 0:
                return "inf"
            return 1 / v

        assert chordal(invert(xs[0]), invert(xs[1]), p) == d1


def test_normalize_idempotent_and_verdict_stability(rng):
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        f = rand_poly_map(rng, p, 2)
        again = normalize_lift(f.forms, p)
        assert again.forms == f.forms
        # rescaling by a unit does not change the verdict
        u = Fraction(1 + p)
        scaled = normalize_lift(tuple(F * u for F in f.forms), p)
        assert reduce_map(scaled, p)[1] == reduce_map(f, p)[1]
