"""Exact base-field arithmetic: p-adic valuations, log-norms, polynomial kernels.

Every quantity is an exact rational (``fractions.Fraction``); there is no
floating point anywhere in this package.  Norms are carried in log units:
``lognorm(x) = log_p |x| = -v_p(x)``, with a distinguished bottom element
for ``|0| = 0``.  Log-norms and radii may carry an integer multiple of a
fixed positive infinitesimal ``eps``, which extends the value group p^Q to
a total order able to represent generic (type III) radii exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

Scalar = Fraction  # base-field elements are exact rationals


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def val(x, p: int):
    """p-adic valuation of a rational; None for x = 0."""
    x = as_scalar(x)
    if x == 0:
        return None
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


@total_ordering
class LogNorm:
    """An element of Q + Q*eps together with a bottom element -inf.

    Ordered lexicographically on (value, eps); eps is an infinitesimal
    positive quantity, so p^(e + k*eps) with k != 0 never lies in p^Q.
    """

    __slots__ = ("value", "eps")

    def __init__(self, value, eps=0):
        if value is None:
            self.value = None
            self.eps = Fraction(0)
        else:
            self.value = as_scalar(value)
            self.eps = Fraction(eps)

    @classmethod
    def bottom(cls) -> "LogNorm":
        return cls(None)

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def _key(self):
        # bottom sorts below everything
        if self.value is None:
            return (0, Fraction(0), Fraction(0))
        return (1, self.value, self.eps)

    def __eq__(self, other):
        if not isinstance(other, LogNorm):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, LogNorm):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other):
        if not isinstance(other, LogNorm):
            other = LogNorm(other)
        if self.is_bottom or other.is_bottom:
            return LogNorm.bottom()
        return LogNorm(self.value + other.value, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        if self.is_bottom:
            raise ValueError("cannot negate -inf")
        return LogNorm(-self.value, -self.eps)

    def __sub__(self, other):
        if not isinstance(other, LogNorm):
            other = LogNorm(other)
        return self + (-other)

    def scale(self, c) -> "LogNorm":
        """Multiply by an exact rational scalar (log of a power)."""
        c = as_scalar(c)
        if self.is_bottom:
            if c == 0:
                return LogNorm(0)
            return LogNorm.bottom()
        return LogNorm(self.value * c, self.eps * c)

    def abs(self) -> "LogNorm":
        if self.is_bottom:
            raise ValueError("|-inf| undefined")
        if (self.value, self.eps) < (Fraction(0), Fraction(0)):
            return -self
        return self

    def __repr__(self):
        if self.is_bottom:
            return "-inf"
        if self.eps == 0:
            return str(self.value)
        sign = "+" if self.eps > 0 else "-"
        return f"{self.value}{sign}{abs(self.eps)}eps"


def lognorm(x, p: int) -> LogNorm:
    """log_p |x| of a rational, exactly; -inf for 0."""
    v = val(x, p)
    if v is None:
        return LogNorm.bottom()
    return LogNorm(-v)


@total_ordering
class Radius:
    """A ball radius: 0, or p^(e + delta*eps) with e rational, delta integer."""

    __slots__ = ("e", "delta", "zero")

    def __init__(self, e=0, delta=0, zero=False):
        if zero:
            self.e = Fraction(0)
            self.delta = 0
            self.zero = True
        else:
            self.e = as_scalar(e)
            self.delta = int(delta)
            self.zero = False

    @classmethod
    def zero_radius(cls) -> "Radius":
        return cls(zero=True)

    @classmethod
    def of_scalar(cls, x, p: int) -> "Radius":
        """Radius |x| of a rational."""
        v = val(x, p)
        if v is None:
            return cls.zero_radius()
        return cls(-v)

    @classmethod
    def from_log(cls, l: LogNorm) -> "Radius":
        if l.is_bottom:
            return cls.zero_radius()
        if l.eps.denominator != 1:
            raise ValueError("radius eps marker must be an integer")
        return cls(l.value, int(l.eps))

    def log(self) -> LogNorm:
        if self.zero:
            return LogNorm.bottom()
        return LogNorm(self.e, self.delta)

    def _key(self):
        if self.zero:
            return (0, Fraction(0), 0)
        return (1, self.e, self.delta)

    def __eq__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __mul__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        if self.zero or other.zero:
            return Radius.zero_radius()
        return Radius(self.e + other.e, self.delta + other.delta)

    def pow(self, n: int) -> "Radius":
        if self.zero:
            return Radius.zero_radius() if n > 0 else Radius(0)
        return Radius(self.e * n, self.delta * n)

    def scaled(self, de) -> "Radius":
        """Multiply the radius by p^de (rational de); keeps the eps marker."""
        if self.zero:
            raise ValueError("cannot scale the zero radius")
        return Radius(self.e + as_scalar(de), self.delta)

    def __repr__(self):
        if self.zero:
            return "0"
        if self.delta == 0:
            return f"p^{self.e}"
        sign = "+" if self.delta > 0 else "-"
        return f"p^({self.e}{sign}{abs(self.delta)}eps)"


class Poly:
    """Univariate polynomial with exact rational coefficients, sparse."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for i, a in coeffs.items():
                a = as_scalar(a)
                if a != 0:
                    c[int(i)] = a
        self.c = c

    @classmethod
    def from_coeffs(cls, seq) -> "Poly":
        """Build from a low-to-high coefficient sequence."""
        return cls({i: a for i, a in enumerate(seq)})

    @classmethod
    def const(cls, a) -> "Poly":
        return cls({0: a})

    @classmethod
    def t(cls) -> "Poly":
        return cls({1: 1})

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.c) if self.c else -1

    def coeff(self, i: int) -> Fraction:
        return self.c.get(i, Fraction(0))

    def coeffs(self):
        """Low-to-high dense coefficient list."""
        d = self.degree
        return [self.coeff(i) for i in range(d + 1)] if d >= 0 else []

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        c = dict(self.c)
        for i, a in other.c.items():
            s = c.get(i, Fraction(0)) + a
            if s == 0:
                c.pop(i, None)
            else:
                c[i] = s
        out = Poly()
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly()
        out.c = {i: -a for i, a in self.c.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            a = as_scalar(other)
            if a == 0:
                return Poly()
            out = Poly()
            out.c = {i: b * a for i, b in self.c.items()}
            return out
        c = {}
        for i, a in self.c.items():
            for j, b in other.c.items():
                k = i + j
                s = c.get(k, Fraction(0)) + a * b
                if s == 0:
                    c.pop(k, None)
                else:
                    c[k] = s
        out = Poly()
        out.c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        """Evaluate at a rational point (Horner on the dense form)."""
        x = as_scalar(x)
        acc = Fraction(0)
        for i in range(self.degree, -1, -1):
            acc = acc * x + self.coeff(i)
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for i in range(self.degree, -1, -1):
            acc = acc * other + Poly.const(self.coeff(i))
        return acc

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in sorted(self.c, reverse=True):
            a = self.c[i]
            term = f"{a}" if i == 0 else (f"{a}*T^{i}" if a != 1 else f"T^{i}")
            parts.append(term)
        return " + ".join(parts)


def taylor_shift(P: Poly, a) -> Poly:
    """Coefficients c_i with P(T) = sum c_i (T - a)^i, exactly.

    Synthetic division by (T - a), repeated; O(deg^2) exact Fraction ops.
    """
    a = as_scalar(a)
    coeffs = P.coeffs()
    n = len(coeffs)
    out = []
    work = list(coeffs)
    for _ in range(n):
        # divide work by (T - a): remainder is the next shifted coefficient
        rem = Fraction(0)
        for i in range(len(work) - 1, -1, -1):
            rem = rem * a + work[i]
        out.append(rem)
        new = []
        carry = Fraction(0)
        for i in range(len(work) - 1, 0, -1):
            carry = carry * a + work[i]
            new.append(carry)
        work = list(reversed(new))
        if not work:
            break
    return Poly({i: v for i, v in enumerate(out)})


class NewtonPolygon:
    """Lower hull of (exponent, valuation); slopes are log_p of root norms."""

    __slots__ = ("ord_at_zero", "segments")

    def __init__(self, ord_at_zero: int, segments):
        self.ord_at_zero = ord_at_zero
        # list of (slope: Fraction, multiplicity: int), slopes increasing
        self.segments = tuple(segments)

    def __repr__(self):
        return f"NewtonPolygon(ord0={self.ord_at_zero}, segments={list(self.segments)})"


def newton_polygon(P: Poly, p: int) -> NewtonPolygon:
    """Newton polygon of a nonzero polynomial.

    A segment (s, m) means exactly m roots (with multiplicity, in an
    algebraic closure) of log-norm s, i.e. |x| = p^s.  Roots equal to zero
    are reported separately through ``ord_at_zero``.
    """
    if P.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = sorted((i, Fraction(val(a, p))) for i, a in P.c.items())
    ord0 = pts[0][0]
    # lower convex hull, left to right (Andrew monotone chain, lower part)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep right turns strictly below: drop hull[-1] if not convex
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        # root valuation is -slope; report slope = log_p |root|
        segments.append((slope, x2 - x1))
    return NewtonPolygon(ord0, segments)


def count_zeros_in_disk(P: Poly, a, r: Radius, p: int, strict: bool = False) -> int:
    """Number of roots x of P with |x - a| <= r (or < r when strict).

    Counted with multiplicity in an algebraic closure; computed from the
    Newton polygon of the recentered polynomial, no factorization.
    """
    if P.is_zero:
        raise ValueError("zero polynomial")
    Q = taylor_shift(P, a)
    np_ = newton_polygon(Q, p)
    if r.zero:
        return 0 if strict else np_.ord_at_zero
    rlog = r.log()
    n = np_.ord_at_zero
    for slope, mult in np_.segments:
        s = LogNorm(slope)
        if (s < rlog) or (not strict and s == rlog):
            n += mult
    return n


class MPoly:
    """Sparse multivariate polynomial over the rationals."""

    __slots__ = ("n", "c")

    def __init__(self, nvars: int, coeffs=None):
        self.n = int(nvars)
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                a = as_scalar(a)
                if a != 0:
                    e = tuple(int(k) for k in e)
                    if len(e) != self.n:
                        raise ValueError("exponent arity mismatch")
                    c[e] = a
        self.c = c

    @classmethod
    def const(cls, nvars: int, a) -> "MPoly":
        return cls(nvars, {tuple([0] * nvars): a})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @property
    def is_zero(self) -> bool:
        return not self.c

    def total_degree(self) -> int:
        return max((sum(e) for e in self.c), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.c)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.c.items()))))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.n, other)
        if self.n != other.n:
            raise ValueError("arity mismatch")
        c = dict(self.c)
        for e, a in other.c.items():
            s = c.get(e, Fraction(0)) + a
            if s == 0:
                c.pop(e, None)
            else:
                c[e] = s
        out = MPoly(self.n)
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.n)
        out.c = {e: -a for e, a in self.c.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.n, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            a = as_scalar(other)
            if a == 0:
                return MPoly(self.n)
            out = MPoly(self.n)
            out.c = {e: b * a for e, b in self.c.items()}
            return out
        if self.n != other.n:
            raise ValueError("arity mismatch")
        c = {}
        for e1, a in self.c.items():
            for e2, b in other.c.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = c.get(e, Fraction(0)) + a * b
                if s == 0:
                    c.pop(e, None)
                else:
                    c[e] = s
        out = MPoly(self.n)
        out.c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval(self, xs):
        xs = [as_scalar(x) for x in xs]
        if len(xs) != self.n:
            raise ValueError("arity mismatch")
        acc = Fraction(0)
        for e, a in self.c.items():
            t = a
            for x, k in zip(xs, e):
                if k:
                    t *= x ** k
            acc += t
        return acc

    def subst_scalars(self, values: dict) -> "MPoly":
        """Substitute exact rationals for some variables (by index)."""
        out = MPoly(self.n)
        c = {}
        for e, a in self.c.items():
            coef = a
            ne = list(e)
            for i, v in values.items():
                if e[i]:
                    coef *= as_scalar(v) ** e[i]
                ne[i] = 0
            if coef == 0:
                continue
            key = tuple(ne)
            s = c.get(key, Fraction(0)) + coef
            if s == 0:
                c.pop(key, None)
            else:
                c[key] = s
        out.c = c
        return out

    def shift(self, centers: dict) -> "MPoly":
        """Recenter: substitute X_i -> c_i + X_i for the given indices."""
        out = self
        for i, ci in centers.items():
            ci = as_scalar(ci)
            if ci == 0:
                continue
            repl = MPoly(self.n, {tuple(0 if j != i else 1 for j in range(self.n)): 1})
            repl = repl + ci
            acc = MPoly(self.n)
            for e, a in out.c.items():
                term = MPoly(self.n, {tuple(0 if j == i else e[j] for j in range(self.n)): a})
                term = term * (repl ** e[i])
                acc = acc + term
            out = acc
        return out

    def compose_many(self, args) -> "MPoly":
        """Substitute an MPoly (all of common arity m) for every variable."""
        if len(args) != self.n:
            raise ValueError("arity mismatch")
        m = args[0].n
        acc = MPoly(m)
        for e, a in self.c.items():
            term = MPoly.const(m, a)
            for g, k in zip(args, e):
                if k:
                    term = term * (g ** k)
            acc = acc + term
        return acc

    def dehomogenize(self, var: int = 1) -> Poly:
        """Binary form -> univariate polynomial by setting variable ``var`` to 1."""
        if self.n != 2:
            raise ValueError("dehomogenize expects a binary form")
        keep = 1 - var
        acc = {}
        for e, a in self.c.items():
            acc[e[keep]] = acc.get(e[keep], Fraction(0)) + a
        return Poly(acc)

    def max_coeff_lognorm(self, p: int) -> LogNorm:
        out = LogNorm.bottom()
        for a in self.c.values():
            l = lognorm(a, p)
            if l > out:
                out = l
        return out

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            a = self.c[e]
            mono = "*".join(f"X{i}^{k}" for i, k in enumerate(e) if k)
            parts.append(f"{a}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def homogenize(P: Poly, d: int) -> MPoly:
    """Univariate P of degree <= d -> binary form X^i Y^(d-i) of degree d."""
    if P.degree > d:
        raise ValueError("degree exceeds homogenization degree")
    return MPoly(2, {(i, d - i): a for i, a in P.c.items()})


def _det(rows):
    """Exact determinant by fraction Gaussian elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] * inv
            for cc in range(col, n):
                m[r][cc] -= f * m[col][cc]
    return det


def resultant(F0: MPoly, F1: MPoly, d: int = None) -> Fraction:
    """Sylvester resultant of two binary forms of equal (declared) degree d.

    Nonzero iff the forms share no projective root over an algebraic
    closure.  The declared degree matters: vanishing leading coefficients
    encode roots at infinity.
    """
    if F0.n != 2 or F1.n != 2:
        raise ValueError("resultant expects binary forms")
    if d is None:
        d = F0.total_degree()
    for F in (F0, F1):
        if F.is_zero:
            return Fraction(0)
        if not F.is_homogeneous(d):
            raise ValueError("forms must be homogeneous of the declared common degree")
    # descending coefficient vectors in T = X/Y: a_i = coeff of X^(d-i) Y^i
    a = [F0.c.get((d - i, i), Fraction(0)) for i in range(d + 1)]
    b = [F1.c.get((d - i, i), Fraction(0)) for i in range(d + 1)]
    n = 2 * d
    rows = []
    for k in range(d):
        rows.append([Fraction(0)] * k + a + [Fraction(0)] * (d - 1 - k))
    for k in range(d):
        rows.append([Fraction(0)] * k + b + [Fraction(0)] * (d - 1 - k))
    assert all(len(r) == n for r in rows)
    return _det(rows)
