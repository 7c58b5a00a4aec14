"""Finite-horizon Fatou-side probes on worked maps.

The bounded-lift probe tracks sup and inf of the iterated lift norms over
an affinoid chart piece against the 2*C1 window; the equicontinuity probe
samples rigid pairs and reports distance growth exponents.  Both report
trends, never certificates.

Run:  python scripts/fatou_probes.py
"""

from fractions import Fraction

from berkdyn.field import Radius
from berkdyn.green import bounded_lift_probe, make_context
from berkdyn.maps import ProbeConfig, equicontinuity_probe
from berkdyn.serialize import parse_poly_sugar, poly_to_projmap
from berkdyn.tree import Disk, make_affinoid

P = 2


def lift_probe(sugar, affinoid, label, n_max=5):
    ctx = make_context(poly_to_projmap(parse_poly_sugar(sugar), P), P)
    rep = bounded_lift_probe(ctx, affinoid, n_max, P)
    print()
    print(f"bounded-lift probe: {sugar} on {label} (C1 = {rep['C1']}, window = {rep['window']})")
    for row in rep["per_n"]:
        print(
            f"  n={row['n']}  sup = {str(row['sup']):>6}  inf = {str(row['inf']):>6}"
            f"  gap = {str(row['gap']):>6}  exact: {row['exact']}"
        )
    print(f"  verdict: {rep['verdict']}")


def equi_probe(sugar, x0, label):
    f = poly_to_projmap(parse_poly_sugar(sugar), P)
    rep = equicontinuity_probe(f, x0, ProbeConfig(depth=5), P)
    print()
    print(f"equicontinuity probe: {sugar} near z = {x0} ({label})")
    for row in rep["per_n"]:
        print(f"  n={row['n']}  affine growth = {row['affine']}  chordal growth = {row['chordal']}")
    print(f"  verdict: {rep['verdict']}")


def main():
    unit = make_affinoid(Disk(Fraction(0), Radius(0)), [], P)
    annulus = make_affinoid(Disk(Fraction(0), Radius(1)), [Disk(Fraction(0), Radius(-1))], P)
    small = make_affinoid(Disk(Fraction(0), Radius(-1)), [], P)
    lift_probe("z^2", unit, "the closed unit disk")
    lift_probe("z^2", annulus, "the annulus 1/2 <= |z| <= 2 (the fixed Gauss point is inside)")
    lift_probe("z^2+2", small, "the disk |z| <= 1/2 (orbit stays integral)")
    equi_probe("z^2", Fraction(0), "superattracting basin")
    equi_probe("z^2", Fraction(1), "integral coefficients, no expansion")
    equi_probe("z^2/2", Fraction(1), "escaping orbit with affine stretching")


if __name__ == "__main__":
    main()
