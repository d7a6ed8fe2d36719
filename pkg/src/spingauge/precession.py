"""Precession propagators along particle paths and pure-gauge diagnostics.

A displacement dr in a field E contributes the phase vector
lambda = G * (dr x E); the associated SU(2) propagator is
U = exp(i (e/hbar) sigma.lambda), applied to spinors as psi -> U psi with
later path segments multiplying on the left. A field of such propagators
defines the pure-gauge object W_mu = U d_mu U^dagger, whose (Hermitian
normalized) curvature vanishes identically; the residual of that identity
under finite differences is the flatness diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .classical import spin_precession_rate
from .errors import StepTooSmall, UnnormalizedSpin
from .gauge import MIN_FD_STEP, EFieldSpec, UnitSystem, build_gauge_r
from .pauli import (
    IDENTITY,
    OpVec3,
    PauliOp,
    SpinState,
    apply,
    exp_i,
    mul,
    op_cross,
)

__all__ = [
    "PathSegment",
    "Propagator",
    "phase_for_segment",
    "propagator",
    "path_ordered_product",
    "pure_gauge_field",
    "no_precession_limit",
    "pure_gauge_curvature_check",
    "precess_bloch",
]

_AXES = (np.array([1.0, 0.0, 0.0]),
         np.array([0.0, 1.0, 0.0]),
         np.array([0.0, 0.0, 1.0]))


def _check_step(h: float) -> None:
    if not h > 0 or h < MIN_FD_STEP:
        raise StepTooSmall(f"finite-difference step {h:g} below {MIN_FD_STEP:g}")


@dataclass(frozen=True, eq=False)
class PathSegment:
    """Straight segment between two points."""

    r_start: np.ndarray
    r_end: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.r_start, dtype=float).reshape(3).copy()
        b = np.asarray(self.r_end, dtype=float).reshape(3).copy()
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("segment endpoints must be finite")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "r_start", a)
        object.__setattr__(self, "r_end", b)

    def subdivide(self, n: int) -> list:
        pts = [self.r_start + (self.r_end - self.r_start) * (i / n)
               for i in range(n + 1)]
        return [PathSegment(pts[i], pts[i + 1]) for i in range(n)]


@dataclass(frozen=True)
class Propagator:
    """SU(2) propagator (unitary, unit determinant)."""

    op: PauliOp

    def apply(self, s: SpinState) -> SpinState:
        return apply(self.op, s)

    def dagger(self) -> "Propagator":
        return Propagator(self.op.dagger())


def phase_for_segment(seg: PathSegment, spec: EFieldSpec,
                      units: UnitSystem) -> np.ndarray:
    """lambda = G * integral of dr x E along the segment.

    Midpoint quadrature, exact for uniform and linear-gradient fields.
    """
    dr = seg.r_end - seg.r_start
    mid = 0.5 * (seg.r_start + seg.r_end)
    return units.coupling * np.cross(dr, spec.evaluate(mid))


def propagator(lam, units: UnitSystem | None = None) -> Propagator:
    """U = exp(i (e/hbar) sigma.lambda); e/hbar = 1 when no units are given."""
    lam = np.asarray(lam, dtype=float)
    scale = 1.0 if units is None else units.e_charge / units.hbar
    return Propagator(exp_i(PauliOp.from_vec(scale * lam)))


def path_ordered_product(path: Sequence[PathSegment], spec: EFieldSpec,
                         units: UnitSystem, n_sub: int = 1) -> Propagator:
    """Ordered product of per-subsegment propagators, later segments leftmost.

    Halving the subdivision changes the result at 2nd order (midpoint rule).
    """
    if n_sub < 1:
        raise ValueError("n_sub must be at least 1")
    u = IDENTITY
    for seg in path:
        for sub in seg.subdivide(n_sub):
            u = mul(propagator(phase_for_segment(sub, spec, units), units).op, u)
    return Propagator(u)


def pure_gauge_field(lambda_fn: Callable[[np.ndarray], np.ndarray], r,
                     h: float, units: UnitSystem | None = None):
    """U(r) d_mu U(r)^dagger by central differences, for U = exp(i k sigma.lambda).

    Returns (W, residue): W is the traceless (sigma) part as an OpVec3 with
    one anti-Hermitian PauliOp per Cartesian direction, residue is the largest
    identity-part magnitude left by the finite differences (zero for an exact
    pure gauge). For a fixed-direction lambda, W_mu = -i k (d_mu lambda).sigma.
    """
    _check_step(h)
    r = np.asarray(r, dtype=float)
    scale = 1.0 if units is None else units.e_charge / units.hbar

    def u_at(point) -> PauliOp:
        return exp_i(PauliOp.from_vec(scale * np.asarray(lambda_fn(point),
                                                         dtype=float)))

    u0 = u_at(r)
    comps = []
    residue = 0.0
    for mu in range(3):
        step = _AXES[mu] * h
        dudag = (u_at(r + step).dagger() - u_at(r - step).dagger()) * (1.0 / (2.0 * h))
        w = mul(u0, dudag)
        residue = max(residue, abs(w.c0))
        comps.append(w.traceless())
    return OpVec3(*comps), residue


def no_precession_limit(spec: EFieldSpec, units: UnitSystem, r) -> OpVec3:
    """Exact no-precession gauge field; coincides with the precession form."""
    return build_gauge_r(spec, units, r)


def pure_gauge_curvature_check(lambda_fn: Callable[[np.ndarray], np.ndarray],
                               r, h: float,
                               units: UnitSystem | None = None) -> float:
    """Curvature residual of the pure-gauge field, by nested central differences.

    The Hermitian normalization A_mu = (i hbar/e) U d_mu U^dagger is fed
    through the standard curvature combination curl A - (i e/hbar) A x A,
    which vanishes identically for a pure gauge; the returned number is the
    largest componentwise Frobenius norm left by the finite differences and
    decreases as h^2 for smooth lambda fields.
    """
    _check_step(h)
    r = np.asarray(r, dtype=float)
    hbar_over_e = 1.0 if units is None else units.hbar / units.e_charge

    def a_pure(point) -> OpVec3:
        w, _ = pure_gauge_field(lambda_fn, point, h, units)
        return w * (1j * hbar_over_e)

    d = []
    for mu in range(3):
        step = _AXES[mu] * h
        d.append((a_pure(r + step) - a_pure(r - step)) * (1.0 / (2.0 * h)))
    curl = OpVec3(d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x)
    a0 = a_pure(r)
    cross = op_cross(a0, a0)
    factor = -1j / hbar_over_e
    residual = curl + cross * factor
    return residual.norm()


def precess_bloch(s, p, e_field, units: UnitSystem, dt: float) -> np.ndarray:
    """Rotate the Bloch vector by the precession angle about p x E.

    The angular velocity is Omega = -(2 e G / m hbar)(p x E), the rate the
    Heisenberg equation gives for sigma under the spin-orbit Hamiltonian;
    |s| is preserved exactly by the Rodrigues rotation. When p and E are
    parallel the spin is returned unchanged.
    """
    s = np.asarray(s, dtype=float)
    if abs(np.linalg.norm(s) - 1.0) > 1e-9:
        raise UnnormalizedSpin(f"|s| = {np.linalg.norm(s):.12g}")
    omega = spin_precession_rate(p, e_field, units)
    norm = float(np.linalg.norm(omega))
    angle = norm * dt
    if angle == 0.0:
        return s.copy()
    axis = omega / norm
    return (s * math.cos(angle) + np.cross(axis, s) * math.sin(angle)
            + axis * float(np.dot(axis, s)) * (1.0 - math.cos(angle)))
