"""Harmonic functions on basic tubes in Poisson form, and log-approximation.

A datum is c0 + sum c_i log|T - a_i| with every pole a_i outside the tube.
Rounding the weights to integers turns the datum into log|h| for an actual
invertible function h = b * prod (T - a_i)^(n_i) on the tube, with a sup
bound certified from the exact range of each log|T - a_i| over the tube.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import LogNorm, Poly, as_scalar, lognorm
from .points import BerkPoint, rigid, seminorm_eval
from .tree import BasicTube, in_tube


@dataclass(frozen=True)
class HarmonicDatum:
    c0: Fraction
    terms: tuple  # (weight: Fraction, pole: Fraction)
    domain: BasicTube


def make_datum(c0, terms, domain: BasicTube, p: int) -> HarmonicDatum:
    if domain.outer is None:
        raise ValueError("harmonic data live on tubes with an affine outer disk")
    if domain.outer.r.delta or any(d.r.delta for d in domain.removed):
        raise ValueError("the tube must be strict: radii in p^Q, no eps markers")
    terms = tuple((as_scalar(c), as_scalar(a)) for c, a in terms)
    for _, a in terms:
        if in_tube(rigid(a), domain, p):
            raise ValueError(f"pole {a} lies inside the domain")
    return HarmonicDatum(as_scalar(c0), terms, domain)


def harm_eval(g: HarmonicDatum, x: BerkPoint, p: int) -> LogNorm:
    """c0 + sum c_i log|T - a_i| at a point of the domain, exactly."""
    if not in_tube(x, g.domain, p):
        raise ValueError("point lies outside the domain of the datum")
    acc = LogNorm(g.c0)
    for c, a in g.terms:
        term = seminorm_eval(Poly({1: 1, 0: -a}), x, p)
        acc = acc + term.scale(c)
    return acc


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _round_half_down(q: Fraction) -> int:
    return _ceil(q - Fraction(1, 2))


def _pole_log_range(a, domain: BasicTube, p: int):
    """Closure of the range of log|T - a| over the tube, as (lo, hi)."""
    o = domain.outer
    d_out = lognorm(a - o.a, p)
    if not (d_out < o.r.log()):
        # pole outside the outer disk: the value is constant on the tube
        return d_out, d_out
    for rem in domain.removed:
        if lognorm(a - rem.a, p) <= rem.r.log():
            # pole inside a removed disk: range spans that annulus
            return rem.r.log(), o.r.log()
    raise ValueError("pole lies inside the domain")


@dataclass(frozen=True)
class HarmApprox:
    b: Fraction
    exponents: tuple  # integer n_i per term
    bound: Fraction  # certified sup |g - log|h||


def harm_approx(g: HarmonicDatum, p: int) -> HarmApprox:
    """Nearest integer-weight logarithm with a certified sup bound.

    h = b * prod (T - a_i)^(n_i) with n_i the nearest integer to c_i (ties
    toward the floor) and log|b| the nearest integer to c0.  The bound is
    |c0 - log|b|| + sum |c_i - n_i| * sup |log|T - a_i||, each sup exact
    from the tube radii.  n_i = 0 is kept when it is nearest: invertibility
    of h on the tube is unaffected.
    """
    k = _round_half_down(g.c0)
    b = Fraction(p) ** (-k)  # lognorm(p^(-k)) = k
    exps = []
    bound = abs(g.c0 - k)
    for c, a in g.terms:
        n = _round_half_down(c)
        exps.append(n)
        lo, hi = _pole_log_range(a, g.domain, p)
        sup_abs = max(abs(lo.value), abs(hi.value))
        bound += abs(c - n) * sup_abs
    return HarmApprox(b, tuple(exps), bound)


def log_h_eval(approx: HarmApprox, g: HarmonicDatum, x: BerkPoint, p: int) -> LogNorm:
    """log|h(x)| for the approximating function h of the datum."""
    if not in_tube(x, g.domain, p):
        raise ValueError("point lies outside the domain of the datum")
    acc = lognorm(approx.b, p)
    for n, (_, a) in zip(approx.exponents, g.terms):
        if n:
            acc = acc + seminorm_eval(Poly({1: 1, 0: -a}), x, p).scale(n)
    return acc
