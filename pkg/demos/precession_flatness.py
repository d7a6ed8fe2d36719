# Pure-gauge flatness of the precession propagator field
# =======================================================
#
# A spin precessing along its path accumulates the SU(2) propagator
# U = exp(i sigma.lambda(r)). The object U dU^dagger is a pure gauge: its
# curvature vanishes identically, which is why precession alone exerts no
# force. Numerically the residual is limited only by the finite-difference
# step and falls off as h^2; this script measures that, and also shows the
# small-angle limit collapsing onto the exact no-precession gauge field.

from pathlib import Path

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

OUT_DIR = Path(__file__).resolve().parent / "output"
OUT_DIR.mkdir(exist_ok=True)

from spingauge import (
    EFieldSpec, UnitSystem,
    no_precession_limit, pure_gauge_curvature_check, pure_gauge_field,
)
from spingauge.pauli import coeff_distance

lam = lambda r: 0.15 * np.array([np.sin(0.3 * r[1]) + 0.2 * r[2],
                                 np.cos(0.3 * r[0]),
                                 0.3 * r[0] * r[1]])
r0 = np.array([0.4, -0.3, 0.2])

steps = np.array([8e-3, 4e-3, 2e-3, 1e-3, 5e-4])
residuals = np.array([pure_gauge_curvature_check(lam, r0, h) for h in steps])
for h, res in zip(steps, residuals):
    print(f"h = {h:.1e}   curvature residual = {res:.3e}")
orders = np.log2(residuals[:-1] / residuals[1:])
print("observed orders:", np.round(orders, 2))

# scaling the phase field down recovers the gauge field G(E x sigma)
units = UnitSystem(coupling=0.8)
e0 = np.array([0.3, -0.5, 1.0])
base = no_precession_limit(EFieldSpec.uniform(e0), units, r0)
scales = np.array([1e-1, 1e-2, 1e-3])
errors = []
for eps in scales:
    w, _ = pure_gauge_field(lambda r: eps * units.coupling * np.cross(r, e0),
                            r0, 1e-4)
    herm = w * 1j
    errors.append(max(coeff_distance(hc, eps * bc)
                      for hc, bc in zip(herm, base)))
errors = np.array(errors)
print("small-angle errors:", errors)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.loglog(steps, residuals, "o-")
ax1.loglog(steps, residuals[0] * (steps / steps[0]) ** 2, "k--", label="h^2")
ax1.set_xlabel("finite-difference step h")
ax1.set_ylabel("curvature residual")
ax1.set_title("pure-gauge flatness")
ax1.legend()
ax2.loglog(scales, errors, "s-")
ax2.loglog(scales, errors[0] * (scales / scales[0]) ** 2, "k--", label="eps^2")
ax2.set_xlabel("phase scale eps")
ax2.set_ylabel("distance to gauge field")
ax2.set_title("no-precession limit")
ax2.legend()
fig.tight_layout()
fig.savefig(OUT_DIR / "precession_flatness.png", dpi=120)
print(f"wrote {OUT_DIR / 'precession_flatness.png'}")
