"""Points of the Berkovich affine/projective line and seminorm evaluation.

A point is one of:

* ``I``     rigid point a (a closed ball of radius 0),
* ``ball``  the sup-seminorm over the closed ball B(a, r), r > 0; type II
            when the radius has no eps marker, type III otherwise,
* ``IV``    a finite strictly-nested ball prefix standing in for a
            decreasing chain; seminorms are returned as enclosures,
* ``inf``   the point at infinity of the projective chart.

Two balls with |a - a'| <= r denote the same seminorm; equality here is
semantic, through ``points_equal``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import (
    LogNorm,
    Poly,
    Radius,
    as_scalar,
    count_zeros_in_disk,
    lognorm,
    taylor_shift,
)


@dataclass(frozen=True)
class BerkPoint:
    kind: str  # "I" | "ball" | "IV" | "inf"
    a: Fraction = None
    r: Radius = None
    prefix: tuple = None

    def __repr__(self):
        if self.kind == "I":
            return f"eta({self.a})"
        if self.kind == "ball":
            return f"eta({self.a}; {self.r})"
        if self.kind == "IV":
            inner = ", ".join(f"({a}; {r})" for a, r in self.prefix)
            return f"eta_IV[{inner}]"
        return "eta(inf)"


def rigid(a) -> BerkPoint:
    return BerkPoint("I", a=as_scalar(a))


def ball(a, r: Radius) -> BerkPoint:
    """The point of the closed ball B(a, r); collapses to type I when r = 0."""
    a = as_scalar(a)
    if r.zero:
        return BerkPoint("I", a=a)
    return BerkPoint("ball", a=a, r=r)


def gauss() -> BerkPoint:
    return ball(Fraction(0), Radius(0))


def infinity() -> BerkPoint:
    return BerkPoint("inf")


def type_iv(prefix, p: int) -> BerkPoint:
    """A type IV stand-in from a strictly nested finite ball prefix."""
    prefix = tuple((as_scalar(a), r) for a, r in prefix)
    if not prefix:
        raise ValueError("empty prefix")
    for (a1, r1), (a2, r2) in zip(prefix, prefix[1:]):
        if r1.zero or r2.zero:
            raise ValueError("prefix radii must be positive")
        if not (r2 < r1):
            raise ValueError("prefix radii must strictly decrease")
        if not (lognorm(a2 - a1, p) <= r1.log()):
            raise ValueError("prefix balls must be nested")
    return BerkPoint("IV", prefix=prefix)


def classify(x: BerkPoint) -> str:
    """Type of a point: I, II, III or IV."""
    if x.kind == "I":
        return "I"
    if x.kind == "ball":
        return "II" if x.r.delta == 0 else "III"
    if x.kind == "IV":
        return "IV"
    raise ValueError("the point at infinity is not classified in the affine chart")


def is_type_ii(x: BerkPoint) -> bool:
    return x.kind == "ball" and x.r.delta == 0


def seminorm_eval(P: Poly, x: BerkPoint, p: int) -> LogNorm:
    """log_p of the point's seminorm applied to P, exactly.

    For the ball B(a, r) this is max_i (|c_i| r^i) with c = P recentered
    at a, the sup of |P| over the ball.  Type IV points only determine an
    enclosure; use ``seminorm_enclosure`` for those.
    """
    if x.kind == "I":
        return lognorm(P(x.a), p)
    if x.kind == "ball":
        c = taylor_shift(P, x.a)
        rlog = x.r.log()
        best = LogNorm.bottom()
        for i, a in c.c.items():
            v = lognorm(a, p) + rlog.scale(i)
            if v > best:
                best = v
        return best
    if x.kind == "IV":
        raise ValueError("type IV seminorms are enclosures; use seminorm_enclosure")
    raise ValueError("seminorm evaluation needs an affine point")


def seminorm_enclosure(P: Poly, x: BerkPoint, p: int):
    """(lower, upper) bounds on the seminorm; exact for types I-III.

    For a type IV prefix the upper bound is the evaluation at the last
    prefix ball; once the prefix ball is root-free the value is pinned
    exactly, so the enclosure collapses.
    """
    if x.kind in ("I", "ball"):
        v = seminorm_eval(P, x, p)
        return (v, v)
    if x.kind != "IV":
        raise ValueError("enclosure needs an affine point")
    a, r = x.prefix[-1]
    upper = seminorm_eval(P, ball(a, r), p)
    if P.is_zero:
        return (upper, upper)
    if count_zeros_in_disk(P, a, r, p) == 0:
        return (upper, upper)
    return (LogNorm.bottom(), upper)


def points_equal(x: BerkPoint, y: BerkPoint, p: int) -> bool:
    """Semantic equality: balls compare by |a - a'| <= r, not by center."""
    if x.kind != y.kind:
        return False
    if x.kind == "inf":
        return True
    if x.kind == "I":
        return x.a == y.a
    if x.kind == "ball":
        return x.r == y.r and lognorm(x.a - y.a, p) <= x.r.log()
    # conservative for type IV: identical prefix data up to ball equality
    if len(x.prefix) != len(y.prefix):
        return False
    return all(
        r1 == r2 and lognorm(a1 - a2, p) <= r1.log()
        for (a1, r1), (a2, r2) in zip(x.prefix, y.prefix)
    )


def _center_radius(x: BerkPoint):
    if x.kind == "I":
        return x.a, Radius.zero_radius()
    if x.kind == "ball":
        return x.a, x.r
    raise ValueError("operation needs a type I-III affine point")


def join(x: BerkPoint, y: BerkPoint, p: int) -> BerkPoint:
    """Smallest closed ball containing both points (the tree join)."""
    if x.kind == "IV" or y.kind == "IV":
        return _join_iv(x, y, p)
    a, r = _center_radius(x)
    b, s = _center_radius(y)
    dist = Radius.of_scalar(a - b, p)
    rad = max(dist, r, s)
    return ball(a, rad)


def _join_iv(x: BerkPoint, y: BerkPoint, p: int) -> BerkPoint:
    if x.kind != "IV":
        x, y = y, x
    for a, r in x.prefix:
        j = join(ball(a, r), y, p)
        if not (j.kind == "ball" and j.r == r):
            return j
    # y sits inside every prefix ball: the join is the last prefix ball
    # only if y is known to lie above the limit, which a finite prefix
    # cannot certify.
    a, r = x.prefix[-1]
    if y.kind == "ball" and y.r == r and lognorm(x.prefix[-1][0] - y.a, p) <= r.log():
        return ball(a, r)
    raise ValueError("type IV prefix too short to determine the join")


def leq(x: BerkPoint, y: BerkPoint, p: int) -> bool:
    """Ball-containment partial order: x <= y iff ball(x) is inside ball(y)."""
    if x.kind == "IV" or y.kind == "IV":
        return _leq_iv(x, y, p)
    a, r = _center_radius(x)
    b, s = _center_radius(y)
    return r <= s and lognorm(a - b, p) <= s.log()


def _leq_iv(x: BerkPoint, y: BerkPoint, p: int) -> bool:
    if x.kind == "IV" and y.kind != "IV":
        # x <= y iff some prefix ball is already inside y
        for a, r in x.prefix:
            if leq(ball(a, r), y, p):
                return True
        a, r = x.prefix[-1]
        if not leq(y, ball(a, r), p):
            return False
        raise ValueError("type IV prefix too short to decide the order")
    if y.kind == "IV" and x.kind != "IV":
        # x <= y would force x below every prefix ball and below the limit
        for a, r in y.prefix:
            if not leq(x, ball(a, r), p):
                return False
        raise ValueError("type IV prefix too short to decide the order")
    raise ValueError("order between two type IV prefixes is not supported")


@dataclass(frozen=True)
class TangentDirection:
    """A direction at a type II point: a center representative or 'to infinity'."""

    base: BerkPoint
    center: Fraction = None  # None means the direction toward infinity

    @property
    def toward_infinity(self) -> bool:
        return self.center is None


def direction(base: BerkPoint, rep, p: int) -> TangentDirection:
    if not is_type_ii(base):
        raise ValueError("tangent directions are taken at type II points")
    if rep is None:
        return TangentDirection(base, None)
    rep = as_scalar(rep)
    if not (lognorm(rep - base.a, p) <= base.r.log()):
        raise ValueError("representative lies outside the base ball")
    return TangentDirection(base, rep)


def same_direction(d1: TangentDirection, d2: TangentDirection, p: int) -> bool:
    if not points_equal(d1.base, d2.base, p):
        raise ValueError("directions live at different base points")
    if d1.toward_infinity or d2.toward_infinity:
        return d1.toward_infinity and d2.toward_infinity
    return lognorm(d1.center - d2.center, p) < d1.base.r.log()
