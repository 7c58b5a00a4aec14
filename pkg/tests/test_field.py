import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkdyn.field import (
    LogNorm,
    MPoly,
    Poly,
    Radius,
    count_zeros_in_disk,
    homogenize,
    lognorm,
    newton_polygon,
    resultant,
    taylor_shift,
    val,
)

from conftest import rand_scalar

rationals = st.builds(
    Fraction, st.integers(-60, 60), st.integers(1, 40)
)
primes = st.sampled_from([2, 3, 5])


# ---------------------------------------------------------------- oracles


def brute_root_count(roots, a, r: Radius, p: int) -> int:
    """Root-valuation count for a polynomial given by its rational roots."""
    n = 0
    for x in roots:
        if Radius.of_scalar(x - a, p) <= r:
            n += 1
    return n


def poly_from_roots(roots, lead=Fraction(1)) -> Poly:
    acc = Poly.const(lead)
    for x in roots:
        acc = acc * Poly({1: 1, 0: -x})
    return acc


def rational_gcd_nonconstant(f: Poly, g: Poly) -> bool:
    """Exact Euclid over Q; used as the independent oracle for resultants."""
    a, b = f, g
    while not b.is_zero:
        # polynomial remainder
        r = a
        while not r.is_zero and r.degree >= b.degree:
            shift = r.degree - b.degree
            c = r.coeff(r.degree) / b.coeff(b.degree)
            r = r - Poly({shift: c}) * b
        a, b = b, r
    return a.degree >= 1


# ----------------------------------------------------------- worked examples


def test_lognorm_examples():
    assert lognorm(8, 2) == LogNorm(-3)
    assert lognorm(Fraction(3, 2), 2) == LogNorm(1)
    assert lognorm(0, 2).is_bottom


def test_taylor_shift_examples():
    assert taylor_shift(Poly({2: 1}), 1).coeffs() == [1, 2, 1]
    assert taylor_shift(Poly({2: 1, 0: -2}), 0).coeffs() == [-2, 0, 1]
    assert taylor_shift(Poly({3: 1}), 2).coeffs() == [8, 12, 6, 1]


def test_newton_polygon_examples():
    np1 = newton_polygon(Poly({2: 1, 0: -2}), 2)
    assert np1.ord_at_zero == 0
    assert np1.segments == ((Fraction(-1, 2), 2),)
    np2 = newton_polygon(Poly({2: 1, 1: -3, 0: 2}), 2)
    assert np2.segments == ((Fraction(-1), 1), (Fraction(0), 1))
    np3 = newton_polygon(Poly({1: 1}), 2)
    assert np3.ord_at_zero == 1 and np3.segments == ()
    with pytest.raises(ValueError):
        newton_polygon(Poly(), 2)


def test_count_zeros_examples():
    assert count_zeros_in_disk(Poly({2: 1, 0: -2}), 0, Radius(-1), 2) == 0
    assert count_zeros_in_disk(Poly({2: 1, 1: -3, 0: 2}), 0, Radius(0), 2) == 2
    for r in (Radius.zero_radius(), Radius(-3), Radius(5)):
        assert count_zeros_in_disk(Poly({1: 1}), 0, r, 2) == 1


def test_resultant_examples():
    X2 = MPoly(2, {(2, 0): 1})
    Y2 = MPoly(2, {(0, 2): 1})
    assert abs(resultant(X2, Y2, 2)) == 1
    assert resultant(X2, MPoly(2, {(0, 2): 2}), 2) == 4
    assert abs(resultant(MPoly(2, {(2, 0): 1, (0, 2): 2}), Y2, 2)) == 1
    with pytest.raises(ValueError):
        resultant(X2, MPoly(2, {(0, 3): 1}), None)


# ------------------------------------------------------------ properties


@given(rationals, rationals, primes)
def test_lognorm_multiplicative(x, y, p):
    assert lognorm(x * y, p) == lognorm(x, p) + lognorm(y, p)


@given(rationals, rationals, primes)
def test_lognorm_ultrametric(x, y, p):
    lx, ly = lognorm(x, p), lognorm(y, p)
    ls = lognorm(x + y, p)
    assert ls <= max(lx, ly)
    if lx != ly:
        assert ls == max(lx, ly)


@given(st.lists(rationals, min_size=1, max_size=6), rationals)
def test_taylor_shift_roundtrip(coeffs, a):
    P = Poly({i: c for i, c in enumerate(coeffs)})
    Q = taylor_shift(P, a)
    assert taylor_shift(Q, -a) == P
    # the shifted coefficients reassemble P exactly
    T = Poly({1: 1, 0: -a})
    back = Poly()
    for i, c in Q.c.items():
        back = back + Poly.const(c) * T ** i
    assert back == P


@given(st.lists(rationals, min_size=1, max_size=6))
def test_polygon_multiplicities(coeffs):
    P = Poly({i: c for i, c in enumerate(coeffs)})
    if P.is_zero:
        return
    np_ = newton_polygon(P, 3)
    assert np_.ord_at_zero + sum(m for _, m in np_.segments) == P.degree


def test_count_zeros_against_root_oracle():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        roots = [rand_scalar(rng, p) for _ in range(rng.randint(1, 5))]
        P = poly_from_roots(roots, lead=rand_scalar(rng, p) or Fraction(1))
        a = rand_scalar(rng, p)
        r = rng.choice(
            [Radius.zero_radius(), Radius(rng.randint(-4, 4)), Radius(Fraction(rng.randint(-8, 8), 2))]
        )
        assert count_zeros_in_disk(P, a, r, p) == brute_root_count(roots, a, r, p)
        strict = count_zeros_in_disk(P, a, r, p, strict=True)
        on_sphere = sum(1 for x in roots if Radius.of_scalar(x - a, p) == r)
        assert count_zeros_in_disk(P, a, r, p) - strict == on_sphere


def test_resultant_vanishing_matches_gcd():
    rng = random.Random(11)
    for _ in range(120):
        d = rng.randint(1, 3)
        roots0 = [Fraction(rng.randint(-4, 4)) for _ in range(d)]
        roots1 = [Fraction(rng.randint(-4, 4)) for _ in range(d)]
        if rng.random() < 0.5:
            roots1[0] = roots0[0]  # force a shared root half the time
        F0 = homogenize(poly_from_roots(roots0), d)
        F1 = homogenize(poly_from_roots(roots1), d)
        res = resultant(F0, F1, d)
        shared = rational_gcd_nonconstant(poly_from_roots(roots0), poly_from_roots(roots1))
        assert (res == 0) == shared


def test_val_basics():
    assert val(0, 5) is None
    assert val(Fraction(50, 3), 5) == 2
    assert val(Fraction(3, 25), 5) == -2


def test_lognorm_order_and_eps():
    assert LogNorm.bottom() < LogNorm(-100)
    assert LogNorm(1, -1) < LogNorm(1) < LogNorm(1, 1)
    assert LogNorm(1).scale(Fraction(1, 2)) == LogNorm(Fraction(1, 2))
    assert (LogNorm(2, 1) + LogNorm(3, -1)) == LogNorm(5, 0)


small_eps = st.integers(-2, 2)


@given(rationals, small_eps, rationals, small_eps, rationals, small_eps)
def test_lognorm_ordered_group_laws(a, ea, b, eb, c, ec):
    x, y, z = LogNorm(a, ea), LogNorm(b, eb), LogNorm(c, ec)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    # order is translation invariant
    if x < y:
        assert x + z < y + z
    assert max(x, y) + z == max(x + z, y + z)


def test_radius_order_and_arithmetic():
    z = Radius.zero_radius()
    assert z < Radius(-100, -5)
    assert Radius(-1) < Radius(-1, 1) < Radius(Fraction(-1, 2))
    assert Radius(-1, 1) * Radius(-2, -1) == Radius(-3, 0)
    assert Radius(-1, 1).pow(3) == Radius(-3, 3)
    assert Radius.from_log(LogNorm(-2, 1)) == Radius(-2, 1)
