"""Semiclassical forces and trajectories for the spin-orbit coupled electron.

Force pieces, with A = G(E x sigma) evaluated at the particle position and all
operators reduced to PauliOps at the classical (r, p):

    external   -e E(r)
    gradient   (e/m) (grad(p.A) - (p.grad) A), zero for a uniform field
    transverse (-i e^2 / m hbar) [A, p.A]  =  (2 e^2 G^2 / m hbar) (sigma.E) (p x E)

The Heisenberg route evaluates the same pieces as commutators against the
Hamiltonian H = (p - eA)^2/2m + V(r) under the standard reductions
(1/i hbar)[p_mu, X(r)] -> -d_mu X and (1/i hbar)[X(r), p^2/2m] -> (p.grad)X/m,
with spin commutators exact; it must reproduce the direct force functions.

Trajectory convention: ParticleState.p is the kinetic momentum m<v>, i.e. the
expectation of the velocity operator times the mass. With that convention the
equations of motion close without double counting:

    dr/dt = p/m        dp/dt = external + gradient + transverse
    ds/dt = Omega x s  with Omega = -(2 e G / m hbar) (p x E)

The transverse deflection can equivalently be produced by the canonical
momentum plus the anomalous velocity -(e/m)<A>; both give identical
trajectories, and the quantum module's Ehrenfest comparison checks this one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState, StepTooSmall, UnnormalizedSpin
from .gauge import (
    DEFAULT_FD_STEP,
    MIN_FD_STEP,
    EFieldSpec,
    UnitSystem,
    build_gauge_r,
    curvature_k,
)
from .pauli import (
    OpVec3,
    PauliOp,
    bloch_expectation,
    commutator,
    cross_vec_op,
    op_dot,
)

__all__ = [
    "ParticleState",
    "ForceBreakdown",
    "TrajectorySeries",
    "gradient_force",
    "spin_transverse_force",
    "heisenberg_force",
    "force_breakdown_at",
    "velocity_operator",
    "karplus_velocity",
    "spin_precession_rate",
    "integrate_trajectory",
]

_AXES = (np.array([1.0, 0.0, 0.0]),
         np.array([0.0, 1.0, 0.0]),
         np.array([0.0, 0.0, 1.0]))


@dataclass(frozen=True, eq=False)
class ParticleState:
    """Semiclassical state: position, kinetic momentum, unit Bloch vector, time."""

    r: np.ndarray
    p: np.ndarray
    s: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float).reshape(3).copy()
        p = np.asarray(self.p, dtype=float).reshape(3).copy()
        s = np.asarray(self.s, dtype=float).reshape(3).copy()
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(p))
                and np.all(np.isfinite(s)) and np.isfinite(self.t)):
            raise NonFiniteState("state has non-finite components")
        if abs(np.linalg.norm(s) - 1.0) > 1e-9:
            raise UnnormalizedSpin(f"|s| = {np.linalg.norm(s):.12g}")
        for arr in (r, p, s):
            arr.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "s", s)


@dataclass(frozen=True, eq=False)
class ForceBreakdown:
    """Force split into external drive, field-gradient, and spin-transverse parts."""

    external: np.ndarray
    gradient: np.ndarray
    transverse: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.external + self.gradient + self.transverse


def _check_step(h: float) -> None:
    if not h > 0 or h < MIN_FD_STEP:
        raise StepTooSmall(f"finite-difference step {h:g} below {MIN_FD_STEP:g}")


def _expect_vec(ops: OpVec3, s) -> np.ndarray:
    return np.array([bloch_expectation(ops.x, s),
                     bloch_expectation(ops.y, s),
                     bloch_expectation(ops.z, s)])


def _gauge_derivatives(spec: EFieldSpec, units: UnitSystem, r, h: float):
    """d_nu A as a list of OpVec3, by central differences."""
    out = []
    for nu in range(3):
        step = _AXES[nu] * h
        diff = build_gauge_r(spec, units, r + step) - build_gauge_r(spec, units, r - step)
        out.append(diff * (1.0 / (2.0 * h)))
    return out


def _gradient_force_ops(spec: EFieldSpec, units: UnitSystem, r, p,
                        h: float) -> OpVec3:
    """(e/m)(grad(p.A) - (p.grad)A) as operators, by central differences."""
    if spec.is_uniform:
        # the differences of a constant field cancel bitwise
        return OpVec3()
    e_over_m = units.e_charge / units.mass
    comps = []
    for mu in range(3):
        step = _AXES[mu] * h
        pa_plus = op_dot(p, build_gauge_r(spec, units, r + step))
        pa_minus = op_dot(p, build_gauge_r(spec, units, r - step))
        comps.append((pa_plus - pa_minus) * (e_over_m / (2.0 * h)))
    grad_pa = OpVec3(*comps)
    d_a = _gauge_derivatives(spec, units, r, h)
    convective = (d_a[0] * p[0] + d_a[1] * p[1] + d_a[2] * p[2]) * e_over_m
    return grad_pa - convective


def gradient_force(state: ParticleState, spec: EFieldSpec, units: UnitSystem,
                   h: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Spin expectation of (e/m)(grad(p.A) - (p.grad)A); zero for uniform fields."""
    _check_step(h)
    ops = _gradient_force_ops(spec, units, state.r, state.p, h)
    return _expect_vec(ops, state.s)


def _transverse_force_ops(spec: EFieldSpec, units: UnitSystem, r, p) -> OpVec3:
    a = build_gauge_r(spec, units, r)
    pa = op_dot(p, a)
    factor = -1j * units.e_charge ** 2 / (units.mass * units.hbar)
    return OpVec3(commutator(a.x, pa) * factor,
                  commutator(a.y, pa) * factor,
                  commutator(a.z, pa) * factor)


def spin_transverse_force(state: ParticleState, spec: EFieldSpec,
                          units: UnitSystem) -> np.ndarray:
    """Spin expectation of (-i e^2/m hbar)[A, p.A], the spin Hall driver."""
    ops = _transverse_force_ops(spec, units, state.r, state.p)
    return _expect_vec(ops, state.s)


def force_breakdown_at(r, p, s, spec: EFieldSpec, units: UnitSystem,
                       h: float = DEFAULT_FD_STEP) -> ForceBreakdown:
    """Force breakdown at raw (r, p, s) values.

    `s` is a spin expectation and may have norm below 1 (mean-field use);
    every piece is linear in s, so no renormalization is implied.
    """
    _check_step(h)
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    s = np.asarray(s, dtype=float)
    external = -units.e_charge * spec.evaluate(r)
    grad = _expect_vec(_gradient_force_ops(spec, units, r, p, h), s)
    trans = _expect_vec(_transverse_force_ops(spec, units, r, p), s)
    return ForceBreakdown(external, grad, trans)


def heisenberg_force(state: ParticleState, spec: EFieldSpec, units: UnitSystem,
                     h: float = DEFAULT_FD_STEP) -> ForceBreakdown:
    """Force from commutators against the Hamiltonian, as a breakdown.

    Pieces, reduced at the classical (r, p) for a static field (the field
    specs cannot be time dependent, so the time-derivative terms of the full
    operator identity vanish identically):

      external    (1/i hbar)[p, V]          -> -e E(r)
      gradient    (1/i hbar)[p, H_so]
                  - e (1/i hbar)[A, p^2/2m] -> (e/m)(grad(p.A) - (p.grad)A)
      transverse  -e (1/i hbar)[A, H_so]    -> (-i e^2/m hbar)[A, p.A]

    with H_so = -(e/m) p.A the spin-orbit piece of the expanded Hamiltonian.
    The spatial commutators are realized by central differences; the spin
    commutator is exact. Total = external + gradient + transverse.
    """
    _check_step(h)
    r, p, s = state.r, state.p, state.s
    e = units.e_charge
    external = -e * spec.evaluate(r)

    def h_so(at) -> PauliOp:
        return op_dot(p, build_gauge_r(spec, units, at)) * (-e / units.mass)

    # (1/i hbar)[p_mu, H_so] -> -d_mu H_so
    grad_comps = []
    for mu in range(3):
        step = _AXES[mu] * h
        grad_comps.append((h_so(r + step) - h_so(r - step)) * (-1.0 / (2.0 * h)))
    # -e (1/i hbar)[A_mu, p^2/2m] -> -(e/m)(p.grad)A_mu
    d_a = _gauge_derivatives(spec, units, r, h)
    convective = (d_a[0] * p[0] + d_a[1] * p[1] + d_a[2] * p[2]) * (e / units.mass)
    grad_ops = OpVec3(*grad_comps) - convective

    # -e (1/i hbar)[A_mu, H_so], spin commutator evaluated exactly
    a = build_gauge_r(spec, units, r)
    hso0 = h_so(r)
    factor = -e / (1j * units.hbar)
    trans_ops = OpVec3(commutator(a.x, hso0) * factor,
                       commutator(a.y, hso0) * factor,
                       commutator(a.z, hso0) * factor)

    return ForceBreakdown(external, _expect_vec(grad_ops, s),
                          _expect_vec(trans_ops, s))


def velocity_operator(p, spec: EFieldSpec, units: UnitSystem, r=None) -> OpVec3:
    """(p/m) I - (e/m) A componentwise."""
    p = np.asarray(p, dtype=float)
    if r is None:
        r = np.zeros(3)
    a = build_gauge_r(spec, units, r)
    scale = -units.e_charge / units.mass
    return OpVec3(PauliOp(complex(p[0] / units.mass)) + a.x * scale,
                  PauliOp(complex(p[1] / units.mass)) + a.y * scale,
                  PauliOp(complex(p[2] / units.mass)) + a.z * scale)


def karplus_velocity(p, dpdt, units: UnitSystem, s) -> np.ndarray:
    """v = p/m - (1/hbar)(dp/dt) x F_k contracted with the spin expectation.

    Uses the brute-force momentum-space curvature. With dp/dt = -eE this
    anomalous term is -2x the velocity-operator term -(e/m)<A>; both are
    reported by the verify suite, the trajectory integrators use neither.
    """
    p = np.asarray(p, dtype=float)
    dpdt = np.asarray(dpdt, dtype=float)
    f_k = curvature_k(p, units, h=1e-3).total
    anom = cross_vec_op(dpdt, f_k) * (-1.0 / units.hbar)
    return p / units.mass + _expect_vec(anom, np.asarray(s, dtype=float))


def spin_precession_rate(p, e_field, units: UnitSystem) -> np.ndarray:
    """Omega with ds/dt = Omega x s; equals -(2 e G / m hbar) (p x E)."""
    rate = -2.0 * units.e_charge * units.coupling / (units.mass * units.hbar)
    return rate * np.cross(np.asarray(p, dtype=float),
                           np.asarray(e_field, dtype=float))


@dataclass(eq=False)
class TrajectorySeries:
    """Fixed-step trajectory samples with per-step force breakdowns."""

    times: np.ndarray
    positions: np.ndarray
    momenta: np.ndarray
    spins: np.ndarray
    f_external: np.ndarray
    f_gradient: np.ndarray
    f_transverse: np.ndarray
    spin_drift_max: float

    def __len__(self) -> int:
        return len(self.times)

    def state(self, i: int) -> ParticleState:
        s = self.spins[i] / np.linalg.norm(self.spins[i])
        return ParticleState(self.positions[i], self.momenta[i], s,
                             float(self.times[i]))


def integrate_trajectory(init: ParticleState, spec: EFieldSpec,
                         units: UnitSystem, dt: float, n_steps: int,
                         fd_step: float = DEFAULT_FD_STEP) -> TrajectorySeries:
    """Classic 4th-order Runge-Kutta on the coupled (r, p, s) system.

    The Bloch vector is renormalized after every step; the largest
    pre-renormalization drift is recorded so the shortcut is auditable.
    """
    if not dt > 0:
        raise StepTooSmall(f"dt = {dt:g} must be positive")
    n = int(n_steps)
    times = init.t + dt * np.arange(n + 1)
    pos = np.empty((n + 1, 3))
    mom = np.empty((n + 1, 3))
    spn = np.empty((n + 1, 3))
    fe = np.empty((n + 1, 3))
    fg = np.empty((n + 1, 3))
    ft = np.empty((n + 1, 3))

    def deriv(r, p, s):
        fb = force_breakdown_at(r, p, s, spec, units, fd_step)
        omega = spin_precession_rate(p, spec.evaluate(r), units)
        return p / units.mass, fb.total, np.cross(omega, s), fb

    r = init.r.copy()
    p = init.p.copy()
    s = init.s.copy()
    drift_max = 0.0
    for i in range(n + 1):
        k1r, k1p, k1s, fb = deriv(r, p, s)
        pos[i], mom[i], spn[i] = r, p, s
        fe[i], fg[i], ft[i] = fb.external, fb.gradient, fb.transverse
        if i == n:
            break
        k2r, k2p, k2s, _ = deriv(r + 0.5 * dt * k1r, p + 0.5 * dt * k1p,
                                 s + 0.5 * dt * k1s)
        k3r, k3p, k3s, _ = deriv(r + 0.5 * dt * k2r, p + 0.5 * dt * k2p,
                                 s + 0.5 * dt * k2s)
        k4r, k4p, k4s, _ = deriv(r + dt * k3r, p + dt * k3p, s + dt * k3s)
        r = r + (dt / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        p = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        s = s + (dt / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(p))
                and np.all(np.isfinite(s))):
            raise NonFiniteState(f"state overflow at step {i + 1}")
        norm = float(np.linalg.norm(s))
        drift_max = max(drift_max, abs(norm - 1.0))
        s = s / norm

    return TrajectorySeries(times, pos, mom, spn, fe, fg, ft, drift_max)
