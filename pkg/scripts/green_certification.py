"""Certified Green function computation on worked examples.

Prints the certified constant, the Cauchy gap table against its bound,
the scaling identity, and good-reduction collapse, all in exact rationals.

Run:  python scripts/green_certification.py
"""

from fractions import Fraction

from berkdyn.field import MPoly, lognorm
from berkdyn.green import green_cauchy_check, green_eval, make_context
from berkdyn.maps import normalize_lift
from berkdyn.serialize import parse_poly_sugar, poly_to_projmap

P = 2


def header(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    f = normalize_lift((MPoly(2, {(2, 0): 1}), MPoly(2, {(0, 2): 2})), P)
    ctx = make_context(f, P)
    header(f"map (X^2, 2Y^2) over p={P}: certified constant C1 = {ctx.C1}")
    for z in [(1, 1), (0, 1), (3, 5)]:
        print(f"  gaps at z = {z}:")
        for n, gap, bound, ok in green_cauchy_check(ctx, z, 8, P):
            print(f"    n={n:2d}  |G_(n+1)-G_n| = {str(gap):>8}  <=  C1/d^n = {str(bound):>8}  {ok}")

    header("evaluation with certified error")
    for eps in (Fraction(1, 16), Fraction(1, 1024)):
        gv = green_eval(ctx, (1, 1), eps, P)
        print(f"  eps = {eps}: G ~ {gv.value} using n = {gv.n_used}, error <= {gv.error_bound}")

    header("scaling identity G(lambda z) = G(z) + log|lambda|")
    ctx2 = make_context(poly_to_projmap(parse_poly_sugar("z^2"), P), P)
    for lam in (Fraction(2), Fraction(1, 2), Fraction(3)):
        a = green_eval(ctx2, (lam * 1, lam * 1), Fraction(1, 8), P)
        b = green_eval(ctx2, (1, 1), Fraction(1, 8), P)
        print(f"  lambda = {lam}: {a.value} = {b.value} + {lognorm(lam, P)}")

    header("good reduction collapses the limit: G = log|z| exactly")
    for sugar in ("z^2", "z^2+2"):
        c = make_context(poly_to_projmap(parse_poly_sugar(sugar), P), P)
        gv = green_eval(c, (3, 4), Fraction(1, 10 ** 9), P)
        print(f"  {sugar}: C1 = {c.C1}, G(3,4) = {gv.value} with n_used = {gv.n_used}")


if __name__ == "__main__":
    main()
