# Pauli operator algebra basics
# =============================
#
# The package stores every 2x2 operator by its coefficients in the
# {I, sigma_x, sigma_y, sigma_z} basis, so products, commutators and SU(2)
# exponentials are closed-form. This script walks the core identities and
# draws a Bloch vector precessing about an effective field axis.

from pathlib import Path

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

OUT_DIR = Path(__file__).resolve().parent / "output"
OUT_DIR.mkdir(exist_ok=True)

from spingauge import (
    SIGMA, SIGMA_X, SIGMA_Y, SIGMA_Z,
    UnitSystem, commutator, exp_i, mul, op_cross, precess_bloch,
)

# products close on the basis: sigma_x sigma_y = i sigma_z
print("sigma_x sigma_y =", mul(SIGMA_X, SIGMA_Y))
print("[sigma_x, sigma_y] =", commutator(SIGMA_X, SIGMA_Y))

# the operator-valued cross product of sigma with itself is 2i sigma
cross = op_cross(SIGMA, SIGMA)
print("(sigma x sigma)_z =", cross.z, " (expect 2i sigma_z)")

# closed-form SU(2) exponential: a half turn about z is -identity
print("exp(i pi sigma_z) =", exp_i(np.pi * SIGMA_Z))

# precession of a Bloch vector about p x E
units = UnitSystem(coupling=0.5)
p = np.array([1.0, 0.0, 0.0])
e_field = np.array([0.0, 0.0, 1.0])
s = np.array([0.0, 0.0, 1.0])
dt = 0.02
history = [s]
for _ in range(600):
    s = precess_bloch(s, p, e_field, units, dt)
    history.append(s)
history = np.array(history)
t = dt * np.arange(len(history))

fig, ax = plt.subplots(figsize=(7, 4))
for idx, label in enumerate(("s_x", "s_y", "s_z")):
    ax.plot(t, history[:, idx], label=label)
ax.set_xlabel("time")
ax.set_ylabel("Bloch components")
ax.set_title("spin precession about p x E")
ax.legend()
fig.tight_layout()
fig.savefig(OUT_DIR / "pauli_algebra.png", dpi=120)
print(f"wrote {OUT_DIR / 'pauli_algebra.png'}")
