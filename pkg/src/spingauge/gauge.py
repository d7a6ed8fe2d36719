"""SU(2) gauge fields of the spin-orbit system and their non-Abelian curvatures.

Real space: A_r = G (E x sigma), one Hermitian PauliOp per Cartesian component,
with curvature F_r = curl A_r - (i e/hbar) A_r x A_r. Momentum space:
A_k = (G/m) (sigma x p), with F_k = curl_k A_k - i A_k x A_k. Curls are taken
with 2nd-order central differences; the supported field specs are at most
linear, so those curls are exact up to rounding and the stencil exists for
future nonlinear specs.

Units are dimensionless by default (hbar = e = m = 1) with the single free
spin-orbit coupling constant `coupling`; SI magnitudes for vacuum spin-orbit
coupling are ~1e-12 and numerically useless.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import StepTooSmall, ValidationError
from .pauli import OpVec3, PauliOp, op_cross

__all__ = [
    "UnitSystem",
    "EFieldSpec",
    "GaugeFieldR",
    "GaugeFieldK",
    "Curvature",
    "build_gauge_r",
    "curvature_r",
    "build_gauge_k",
    "curl_k",
    "cross_self_k",
    "curvature_k",
    "MIN_FD_STEP",
    "DEFAULT_FD_STEP",
]

MIN_FD_STEP = 1e-12
DEFAULT_FD_STEP = 1e-4

_AXES = (np.array([1.0, 0.0, 0.0]),
         np.array([0.0, 1.0, 0.0]),
         np.array([0.0, 0.0, 1.0]))


def _check_step(h: float) -> None:
    if not h > 0 or h < MIN_FD_STEP:
        raise StepTooSmall(f"finite-difference step {h:g} below {MIN_FD_STEP:g}")


@dataclass(frozen=True)
class UnitSystem:
    """Unit constants plus the spin-orbit coupling time constant."""

    hbar: float = 1.0
    e_charge: float = 1.0
    mass: float = 1.0
    coupling: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "e_charge", "mass"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValidationError(f"units.{name}", "must be finite and positive")
        if not np.isfinite(self.coupling):
            raise ValidationError("units.coupling", "must be finite")


@dataclass(frozen=True, eq=False)
class EFieldSpec:
    """Electric field, either uniform or with a constant gradient matrix.

    For kind "gradient", E(r) = e0 + gradient @ r with gradient[i, j] = dE_i/dr_j.
    """

    kind: str
    e0: np.ndarray
    gradient: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        e0 = np.asarray(self.e0, dtype=float).reshape(3).copy()
        grad = np.asarray(self.gradient, dtype=float).reshape(3, 3).copy()
        if not np.all(np.isfinite(e0)):
            raise ValidationError("field.e0", "components must be finite")
        if not np.all(np.isfinite(grad)):
            raise ValidationError("field.gradient", "entries must be finite")
        if self.kind not in ("uniform", "gradient"):
            raise ValidationError("field.kind", f"unknown kind {self.kind!r}")
        if self.kind == "uniform" and np.any(grad != 0.0):
            raise ValidationError("field.gradient", "must be zero for a uniform field")
        e0.setflags(write=False)
        grad.setflags(write=False)
        object.__setattr__(self, "e0", e0)
        object.__setattr__(self, "gradient", grad)

    @classmethod
    def uniform(cls, e0) -> "EFieldSpec":
        return cls("uniform", np.asarray(e0, dtype=float))

    @classmethod
    def linear_gradient(cls, e0, gradient) -> "EFieldSpec":
        return cls("gradient", np.asarray(e0, dtype=float),
                   np.asarray(gradient, dtype=float))

    @property
    def is_uniform(self) -> bool:
        return self.kind == "uniform"

    def evaluate(self, r) -> np.ndarray:
        if self.kind == "uniform":
            return self.e0
        return self.e0 + self.gradient @ np.asarray(r, dtype=float)

    def same_as(self, other: "EFieldSpec") -> bool:
        return (self.kind == other.kind
                and np.array_equal(self.e0, other.e0)
                and np.array_equal(self.gradient, other.gradient))


def build_gauge_r(spec: EFieldSpec, units: UnitSystem, r) -> OpVec3:
    """Real-space gauge field G*(E(r) x sigma), componentwise Hermitian."""
    e = spec.evaluate(r)
    g = units.coupling
    return OpVec3(
        PauliOp(0j, 0j, -g * e[2], g * e[1]),
        PauliOp(0j, g * e[2], 0j, -g * e[0]),
        PauliOp(0j, -g * e[1], g * e[0], 0j),
    )


def build_gauge_k(p, units: UnitSystem) -> OpVec3:
    """Momentum-space gauge field (G/m)*(sigma x p), linear in p."""
    p = np.asarray(p, dtype=float)
    gm = units.coupling / units.mass
    return OpVec3(
        PauliOp(0j, 0j, gm * p[2], -gm * p[1]),
        PauliOp(0j, -gm * p[2], 0j, gm * p[0]),
        PauliOp(0j, gm * p[1], -gm * p[0], 0j),
    )


@dataclass(frozen=True)
class GaugeFieldR:
    """Real-space gauge field bound to a field spec and unit system."""

    spec: EFieldSpec
    units: UnitSystem

    def at(self, r) -> OpVec3:
        return build_gauge_r(self.spec, self.units, r)


@dataclass(frozen=True)
class GaugeFieldK:
    """Momentum-space gauge field bound to a unit system."""

    units: UnitSystem

    def at(self, p) -> OpVec3:
        return build_gauge_k(p, self.units)


@dataclass(frozen=True)
class Curvature:
    """Curvature split into its curl and commutator (cross) pieces."""

    curl_part: OpVec3
    cross_part: OpVec3
    total: OpVec3


def _fd_curl(field_at, x, h: float, scale: float = 1.0) -> OpVec3:
    """Central-difference curl of an OpVec3-valued field.

    `scale` rescales the derivative (used for d/dk = hbar * d/dp).
    """
    x = np.asarray(x, dtype=float)
    d = []
    for mu in range(3):
        step = _AXES[mu] * h
        diff = field_at(x + step) - field_at(x - step)
        d.append(diff * (scale / (2.0 * h)))
    return OpVec3(
        d[1].z - d[2].y,
        d[2].x - d[0].z,
        d[0].y - d[1].x,
    )


def curvature_r(gauge: GaugeFieldR, r, h: float = DEFAULT_FD_STEP) -> Curvature:
    """F_r = curl A_r - (i e/hbar) A_r x A_r at the point r."""
    _check_step(h)
    curl = _fd_curl(gauge.at, r, h)
    a0 = gauge.at(r)
    cross = op_cross(a0, a0)
    factor = -1j * gauge.units.e_charge / gauge.units.hbar
    return Curvature(curl, cross, curl + cross * factor)


def curl_k(gauge: GaugeFieldK, p, h: float = DEFAULT_FD_STEP) -> OpVec3:
    """curl of A_k with respect to the wavevector k = p/hbar.

    For the linear field this equals (2 hbar G/m) sigma for any step size.
    """
    _check_step(h)
    hbar = gauge.units.hbar
    # step p by hbar*h so the difference quotient is d/dk
    return _fd_curl(lambda q: gauge.at(q), np.asarray(p, dtype=float),
                    hbar * h, scale=hbar)


def cross_self_k(p, units: UnitSystem) -> OpVec3:
    """Brute-force A_k x A_k; equals 2i (G/m)^2 (sigma.p) p analytically."""
    a = build_gauge_k(p, units)
    return op_cross(a, a)


def curvature_k(p, units: UnitSystem, h: float = DEFAULT_FD_STEP) -> Curvature:
    """F_k = curl_k A_k - i A_k x A_k, assembled from the brute-force pieces."""
    _check_step(h)
    curl = curl_k(GaugeFieldK(units), p, h)
    cross = cross_self_k(p, units)
    return Curvature(curl, cross, curl + cross * (-1j))
