# Gauge fields and their non-Abelian curvatures
# ==============================================
#
# The real-space gauge field G(E x sigma) has a curvature whose commutator
# piece survives even for a uniform field; the momentum-space field
# (G/m)(sigma x p) has a constant curl (2 hbar G/m) sigma plus a momentum
# dependent commutator piece. The brute-force evaluations below are the
# ground truth the library tests against, including where printed closed
# forms in the source derivation carry sign/prefactor slips.

import numpy as np

from spingauge import (
    EFieldSpec, GaugeFieldK, GaugeFieldR, UnitSystem,
    build_gauge_r, cross_self_k, curl_k, curvature_k, curvature_r,
)

units = UnitSystem(coupling=0.4)
field = EFieldSpec.uniform([0.0, 0.0, 1.3])
r0 = np.zeros(3)

a = build_gauge_r(field, units, r0)
print("A_x =", a.x)
print("A_y =", a.y)

cur = curvature_r(GaugeFieldR(field, units), r0)
print("\nreal-space curvature, z component (uniform field):")
print("  curl part :", cur.curl_part.z, " (zero: constant field)")
print("  cross part:", cur.cross_part.z)
print("  total     :", cur.total.z, " (2 G^2 E0^2 sigma_z)")

p = np.array([0.7, -0.4, 0.9])
print("\nmomentum-space curl (any p, any step):")
print("  curl_k =", curl_k(GaugeFieldK(units), p).x, "on x; expect (2G/m) sigma_x")

cross = cross_self_k(p, units)
gm = units.coupling / units.mass
printed = [-(gm ** 2) * pc for pc in p]
print("\nA_k x A_k, brute force vs printed closed form:")
print("  computed z component:", cross.z)
print("  computed form is +2i (G/m)^2 (sigma.p) p;")
print("  the printed form -(G/m)^2 (sigma.p) p differs by -2i (typo, flagged info)")

total = curvature_k(p, units).total
print("\nk-space curvature total, x component:", total.x)
