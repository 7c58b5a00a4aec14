"""Pointwise limits of bounded-degree polynomial map families.

Two worked families of linear maps f_n(z) = c_n z:

* equidistant unit coefficients (p = 5): the coefficient coordinate
  converges to the Gauss point, and |g(f_n(z))| equals the limit
  evaluation exactly for every member;
* the 2-adic Cauchy family c_n = 2^(n+1) - 1 -> -1: the limit is the
  rigid map -z and the panel values agree from some index on.

Run:  python scripts/map_family_limits.py
"""

from fractions import Fraction

from berkdyn.families import CauchyTail, EquidistantTail, alpha_of, montel_limit_demo
from berkdyn.field import Poly, Radius


def show(alpha, report, label):
    print()
    print(label)
    print("-" * len(label))
    print(f"  limit coordinate (l=1, I=(1,)): {alpha.coord(1, (1,))}")
    for row in report["panel"]:
        print(f"  panel #{row['panel_index']}: agreement from n = {row['agree_from']}")
        for r in row["rows"]:
            print(
                f"    n={r['n']}  |g(f_n(z))| = {str(r['family']):>8}"
                f"   limit = {str(r['limit']):>8}   equal: {r['equal']}"
            )


def main():
    p = 5
    zetas = (1, 2, 3, 4)
    fam = [alpha_of([Poly({1: z})], 1, p) for z in zetas]
    panel = [(Poly({1: 1}), (Fraction(5),)), (Poly({2: 1, 1: 2}), (Fraction(10),))]
    alpha, report = montel_limit_demo(fam, {(1, (1,)): EquidistantTail(Radius(0))}, panel, p)
    show(alpha, report, f"equidistant family f_n = zeta_n z over p={p}, zeta in {zetas}")

    p = 2
    coeffs = [2 ** (n + 1) - 1 for n in range(1, 9)]
    fam2 = [alpha_of([Poly({1: c})], 1, p) for c in coeffs]
    cert = CauchyTail(tuple(Radius(-(n + 1)) for n in range(1, 9)), limit=Fraction(-1))
    panel2 = [(Poly({1: 1}), (Fraction(2),)), (Poly({2: 1, 0: 2}), (Fraction(2),))]
    alpha2, report2 = montel_limit_demo(fam2, {(1, (1,)): cert}, panel2, p)
    show(alpha2, report2, f"cauchy family c_n = 2^(n+1) - 1 over p={p} (limit -1)")

    fam3 = [alpha_of([Poly({1: Fraction(2) ** n})], 1, p) for n in range(1, 8)]
    cert3 = CauchyTail(tuple(Radius(-n) for n in range(1, 8)), limit=Fraction(0))
    alpha3, report3 = montel_limit_demo(fam3, {(1, (1,)): cert3}, [(Poly({1: 1}), (Fraction(2),))], p)
    show(alpha3, report3, "collapsing family f_n = 2^n z (norms fall to -inf, limit is the zero map)")


if __name__ == "__main__":
    main()
