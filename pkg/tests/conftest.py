import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from berkdyn.field import Poly, Radius
from berkdyn.points import ball, rigid

settings.register_profile(
    "suite",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def rand_scalar(rng: random.Random, p: int, span: int = 2) -> Fraction:
    unit = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
    return unit * Fraction(p) ** rng.randint(-span, span)


def rand_nonzero_scalar(rng, p, span=2):
    while True:
        x = rand_scalar(rng, p, span)
        if x != 0:
            return x


def rand_poly(rng: random.Random, p: int, max_deg: int = 4) -> Poly:
    deg = rng.randint(0, max_deg)
    coeffs = {}
    for i in range(deg + 1):
        if i < deg and rng.random() < 0.25:
            continue
        coeffs[i] = rand_scalar(rng, p)
    if deg not in coeffs or coeffs[deg] == 0:
        coeffs[deg] = rand_nonzero_scalar(rng, p)
    return Poly(coeffs)


def rand_radius(rng: random.Random, with_eps: bool = False) -> Radius:
    e = Fraction(rng.randint(-8, 4), rng.choice([1, 1, 2, 3]))
    delta = rng.choice([-1, 0, 1]) if with_eps else 0
    return Radius(e, delta)


def rand_point(rng: random.Random, p: int, kinds=("I", "II", "III")):
    kind = rng.choice(kinds)
    a = rand_scalar(rng, p)
    if kind == "I":
        return rigid(a)
    if kind == "II":
        return ball(a, rand_radius(rng, with_eps=False))
    r = rand_radius(rng, with_eps=True)
    if r.delta == 0:
        r = Radius(r.e, rng.choice([-1, 1]))
    return ball(a, r)


@pytest.fixture
def rng():
    return random.Random(20240811)
