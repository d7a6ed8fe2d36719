"""Forces, velocity operators, and trajectory integration."""

import numpy as np
import pytest

from spingauge.classical import (
    ForceBreakdown,
    ParticleState,
    force_breakdown_at,
    gradient_force,
    heisenberg_force,
    integrate_trajectory,
    karplus_velocity,
    spin_precession_rate,
    spin_transverse_force,
    velocity_operator,
)
from spingauge.errors import NonFiniteState, StepTooSmall, UnnormalizedSpin
from spingauge.gauge import EFieldSpec, UnitSystem
from spingauge.pauli import SIGMA, bloch_expectation, commutator, op_dot

RNG_SEED = 1618

UNIFORM_Z = EFieldSpec.uniform([0.0, 0.0, 1.0])
GRAD_SPEC = EFieldSpec.linear_gradient(
    [0.3, -0.2, 0.9],
    [[0.1, 0.02, 0.0], [0.02, -0.05, 0.01], [0.0, 0.01, 0.15]])


def closed_form_transverse(state, spec, units):
    e = spec.evaluate(state.r)
    pref = 2.0 * units.e_charge ** 2 * units.coupling ** 2 / (units.mass * units.hbar)
    return pref * float(np.dot(state.s, e)) * np.cross(state.p, e)


def test_state_validation():
    with pytest.raises(UnnormalizedSpin):
        ParticleState([0, 0, 0], [1, 0, 0], [0.5, 0, 0])
    with pytest.raises(NonFiniteState):
        ParticleState([np.inf, 0, 0], [1, 0, 0], [0, 0, 1])


def test_gradient_force_zero_for_uniform_field():
    st = ParticleState([0.3, -0.4, 0.2], [1.0, 2.0, -0.5], [0, 0, 1])
    f = gradient_force(st, UNIFORM_Z, UnitSystem(coupling=0.7))
    assert np.all(f == 0.0)


def test_gradient_force_zero_momentum():
    st = ParticleState([0.3, -0.4, 0.2], [0, 0, 0], [1, 0, 0])
    f = gradient_force(st, GRAD_SPEC, UnitSystem(coupling=0.7))
    assert np.abs(f).max() <= 1e-14


def test_gradient_force_single_gradient_analytic():
    # dE_z/dx = gamma, p = p0 x-hat: the operator reduces to
    # (e/m) G gamma p0 (0, -sigma_x, 0)
    gamma, p0 = 0.4, 1.3
    spec = EFieldSpec.linear_gradient([0, 0, 1.0],
                                      [[0, 0, 0], [0, 0, 0], [gamma, 0, 0]])
    u = UnitSystem(coupling=0.6, mass=1.2, e_charge=0.9)
    pref = u.e_charge / u.mass * u.coupling * gamma * p0
    st_z = ParticleState([0, 0, 0], [p0, 0, 0], [0, 0, 1])
    assert np.abs(gradient_force(st_z, spec, u)).max() <= 1e-12
    st_x = ParticleState([0, 0, 0], [p0, 0, 0], [1, 0, 0])
    got = gradient_force(st_x, spec, u)
    assert np.allclose(got, [0.0, -pref, 0.0], atol=1e-10)


def test_gradient_force_matches_half_step_oracle():
    # independent central-difference oracle on the full expectation,
    # at half the step size
    u = UnitSystem(coupling=0.6, mass=1.2, e_charge=0.9)
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(20):
        s = rng.standard_normal(3)
        s /= np.linalg.norm(s)
        st = ParticleState(rng.standard_normal(3), rng.standard_normal(3), s)
        got = gradient_force(st, GRAD_SPEC, u, h=1e-4)

        def expect_pa(r):
            from spingauge.gauge import build_gauge_r
            return np.array([bloch_expectation(
                op_dot(st.p, build_gauge_r(GRAD_SPEC, u, r)), s)])

        def expect_a(r):
            from spingauge.gauge import build_gauge_r
            a = build_gauge_r(GRAD_SPEC, u, r)
            return np.array([bloch_expectation(c, s) for c in a])

        h2 = 5e-5
        oracle = np.zeros(3)
        axes = np.eye(3)
        for mu in range(3):
            d_pa = (expect_pa(st.r + h2 * axes[mu])
                    - expect_pa(st.r - h2 * axes[mu]))[0] / (2 * h2)
            oracle[mu] += u.e_charge / u.mass * d_pa
        conv = np.zeros(3)
        for nu in range(3):
            d_a = (expect_a(st.r + h2 * axes[nu])
                   - expect_a(st.r - h2 * axes[nu])) / (2 * h2)
            conv += st.p[nu] * d_a
        oracle -= u.e_charge / u.mass * conv
        assert np.abs(got - oracle).max() <= 1e-8


def test_transverse_force_reference_values():
    u = UnitSystem(coupling=0.02)
    st = ParticleState([0, 0, 0], [2.0, 0, 0], [0, 0, 1])
    got = spin_transverse_force(st, UNIFORM_Z, u)
    assert np.allclose(got, [0.0, -2.0 * 0.02 ** 2 * 2.0, 0.0], atol=1e-15)
    flipped = ParticleState([0, 0, 0], [2.0, 0, 0], [0, 0, -1])
    assert np.allclose(spin_transverse_force(flipped, UNIFORM_Z, u), -got, atol=1e-18)
    parallel = ParticleState([0, 0, 0], [0, 0, 3.0], [1, 0, 0])
    assert np.abs(spin_transverse_force(parallel, UNIFORM_Z, u)).max() <= 1e-16


def test_transverse_force_closed_form_batch():
    rng = np.random.default_rng(RNG_SEED + 1)
    worst = 0.0
    for _ in range(1000):
        u = UnitSystem(hbar=float(rng.uniform(0.5, 2)), e_charge=float(rng.uniform(0.5, 2)),
                       mass=float(rng.uniform(0.5, 2)), coupling=float(rng.uniform(0.05, 1)))
        s = rng.standard_normal(3)
        s /= np.linalg.norm(s)
        st = ParticleState(rng.standard_normal(3), rng.standard_normal(3), s)
        spec = EFieldSpec.uniform(rng.standard_normal(3))
        got = spin_transverse_force(st, spec, u)
        want = closed_form_transverse(st, spec, u)
        scale = max(np.abs(want).max(), 1e-12)
        worst = max(worst, np.abs(got - want).max() / scale)
    assert worst <= 1e-11


def test_transverse_force_perpendicular_structure():
    rng = np.random.default_rng(RNG_SEED + 2)
    for _ in range(100):
        u = UnitSystem(coupling=0.5)
        s = rng.standard_normal(3)
        s /= np.linalg.norm(s)
        st = ParticleState(rng.standard_normal(3), rng.standard_normal(3), s)
        e = rng.standard_normal(3)
        f = spin_transverse_force(st, EFieldSpec.uniform(e), u)
        scale = max(np.abs(f).max(), 1e-30)
        assert abs(np.dot(f, e)) / (scale * np.linalg.norm(e)) <= 1e-12
        assert abs(np.dot(f, st.p)) / (scale * max(np.linalg.norm(st.p), 1e-30)) <= 1e-12


def test_heisenberg_breakdown_uniform():
    u = UnitSystem(coupling=0.02)
    st = ParticleState([0.1, 0.2, 0.0], [2.0, 0, 0], [0, 0, 1])
    hb = heisenberg_force(st, UNIFORM_Z, u)
    assert np.allclose(hb.external, [0, 0, -1.0], atol=1e-15)
    assert np.abs(hb.gradient).max() == 0.0
    assert np.allclose(hb.transverse, spin_transverse_force(st, UNIFORM_Z, u), atol=1e-15)
    assert np.allclose(hb.total, hb.external + hb.gradient + hb.transverse, atol=0)


def test_heisenberg_zero_field():
    st = ParticleState([0, 0, 0], [1, 0, 0], [0, 0, 1])
    hb = heisenberg_force(st, EFieldSpec.uniform([0, 0, 0]), UnitSystem())
    assert np.abs(hb.total).max() == 0.0


def test_heisenberg_matches_direct_forces():
    rng = np.random.default_rng(RNG_SEED + 3)
    u = UnitSystem(hbar=1.2, e_charge=0.8, mass=1.4, coupling=0.5)
    for spec in (UNIFORM_Z, GRAD_SPEC):
        for _ in range(50):
            s = rng.standard_normal(3)
            s /= np.linalg.norm(s)
            st = ParticleState(rng.standard_normal(3), rng.standard_normal(3), s)
            hb = heisenberg_force(st, spec, u)
            assert np.abs(hb.gradient - gradient_force(st, spec, u)).max() <= 1e-10
            assert np.abs(hb.transverse - spin_transverse_force(st, spec, u)).max() <= 1e-10
            assert np.abs(hb.external + u.e_charge * spec.evaluate(st.r)).max() == 0.0


def test_heisenberg_spin_average_leaves_drive():
    u = UnitSystem(coupling=0.3)
    up = ParticleState([0, 0, 0], [1.5, 0, 0], [0, 0, 1])
    dn = ParticleState([0, 0, 0], [1.5, 0, 0], [0, 0, -1])
    f_up = heisenberg_force(up, UNIFORM_Z, u)
    f_dn = heisenberg_force(dn, UNIFORM_Z, u)
    mean = 0.5 * (f_up.total + f_dn.total)
    assert np.allclose(mean, [0, 0, -u.e_charge], atol=1e-15)


def test_velocity_operator_components():
    u = UnitSystem(mass=2.0)
    v = velocity_operator([1.0, -2.0, 0.5], EFieldSpec.uniform([0, 0, 0]), u)
    assert np.allclose([v.x.c0, v.y.c0, v.z.c0], [0.5, -1.0, 0.25])
    for c in v:
        assert abs(c.cx) + abs(c.cy) + abs(c.cz) == 0.0


def test_velocity_operator_expectations():
    u = UnitSystem(coupling=0.3)
    e0 = 1.2
    v = velocity_operator([2.0, 0, 0], EFieldSpec.uniform([0, 0, e0]), u)
    s_z = np.array([0.0, 0.0, 1.0])
    got = np.array([bloch_expectation(c, s_z) for c in v])
    assert np.allclose(got, [2.0, 0.0, 0.0], atol=1e-15)
    s_x = np.array([1.0, 0.0, 0.0])
    got = np.array([bloch_expectation(c, s_x) for c in v])
    # anomalous part -(e/m) G (E x s): E x x-hat = e0 y-hat
    assert np.allclose(got, [2.0, -0.3 * e0, 0.0], atol=1e-15)


def test_karplus_velocity_structure():
    u = UnitSystem(coupling=0.3)
    e0 = np.array([0, 0, 1.0])
    assert np.allclose(karplus_velocity([0.7, 0, 0], np.zeros(3), u, [0, 0, 1.0]),
                       [0.7, 0, 0], atol=1e-15)
    vk = karplus_velocity(np.zeros(3), -u.e_charge * e0, u, [1.0, 0, 0])
    # transverse magnitude 2 G e E0 / m along +y for spin x-hat
    assert np.allclose(vk, [0.0, 2.0 * 0.3, 0.0], atol=1e-12)
    # ratio against the velocity-operator anomalous term is -2
    vop = velocity_operator(np.zeros(3), EFieldSpec.uniform(e0), u)
    vop_exp = np.array([bloch_expectation(c, [1.0, 0, 0]) for c in vop])
    assert abs(vk[1] / vop_exp[1] + 2.0) <= 1e-12


def test_precession_rate_values():
    u = UnitSystem(coupling=0.5)
    assert np.all(spin_precession_rate([0, 0, 2.0], [0, 0, 1.0], u) == 0.0)
    got = spin_precession_rate([1.5, 0, 0], [0, 0, 2.0], u)
    # -(2eG/m hbar) (p x E); p x E = -3 y-hat
    assert np.allclose(got, [0.0, 3.0, 0.0], atol=1e-15)
    assert np.allclose(spin_precession_rate([3.0, 0, 0], [0, 0, 2.0], u), 2 * got,
                       atol=1e-15)
    # sign oracle: ds/dt = Omega x s must match (1/i hbar)<[sigma, H]>
    # with H = -(eG/m) sigma.(p x E)
    rng = np.random.default_rng(RNG_SEED + 4)
    for _ in range(20):
        p, e = rng.standard_normal(3), rng.standard_normal(3)
        s = rng.standard_normal(3)
        s /= np.linalg.norm(s)
        omega = spin_precession_rate(p, e, u)
        want = np.cross(omega, s)
        h_op = op_dot(np.cross(p, e), SIGMA) * (-u.e_charge * u.coupling / u.mass)
        got = np.array([bloch_expectation(
            commutator(sig, h_op) * (1.0 / (1j * u.hbar)), s) for sig in SIGMA])
        assert np.abs(got - want).max() <= 1e-12


def test_trajectory_free_particle():
    init = ParticleState([0.5, -0.2, 0.1], [1.0, 2.0, -0.5], [0, 0, 1])
    tr = integrate_trajectory(init, EFieldSpec.uniform([0, 0, 0]), UnitSystem(),
                              dt=0.01, n_steps=500)
    want = init.r + init.p * (tr.times[-1] - tr.times[0])
    assert np.abs(tr.positions[-1] - want).max() <= 1e-12
    assert np.abs(tr.momenta - init.p).max() == 0.0
    assert np.abs(tr.spins - init.s).max() == 0.0


def test_trajectory_transverse_antisymmetry():
    u = UnitSystem(coupling=0.02)
    up = ParticleState([0, 0, 0], [2.0, 0, 0], [0, 0, 1])
    dn = ParticleState([0, 0, 0], [2.0, 0, 0], [0, 0, -1])
    t_up = integrate_trajectory(up, UNIFORM_Z, u, dt=5e-3, n_steps=2000)
    t_dn = integrate_trajectory(dn, UNIFORM_Z, u, dt=5e-3, n_steps=2000)
    assert abs(t_up.positions[-1, 1]) > 0.01  # the deflection is real
    assert abs(t_up.positions[-1, 1] + t_dn.positions[-1, 1]) <= 1e-10


def test_trajectory_against_closed_form_drift():
    # uniform E = E0 z, p0 = p x-hat, s = z: y(t) = -(1 - cos(w t))/(2 p0)
    # with w = 2 G p0 E0 (units e = m = hbar = 1)
    u = UnitSystem(coupling=0.02)
    p0 = 2.0
    init = ParticleState([0, 0, 0], [p0, 0, 0], [0, 0, 1])
    tr = integrate_trajectory(init, UNIFORM_Z, u, dt=5e-3, n_steps=2000)
    t_end = tr.times[-1]
    w = 2.0 * u.coupling * p0
    want_y = -(1.0 - np.cos(w * t_end)) / (2.0 * p0)
    assert abs(tr.positions[-1, 1] - want_y) <= 5e-6


def test_trajectory_spin_norm_drift():
    u = UnitSystem(coupling=0.1)
    init = ParticleState([0, 0, 0], [1.0, 0, 0], [0, 0, 1])
    tr = integrate_trajectory(init, UNIFORM_Z, u, dt=1e-3, n_steps=10000)
    assert tr.spin_drift_max <= 1e-9


def test_trajectory_fourth_order():
    # observed order >= 3.8 against a dt/16 reference, and halving dt cuts
    # the endpoint error by at least 8x
    u = UnitSystem(coupling=0.5)
    spec = EFieldSpec.uniform([0, 0, 2.0])
    init = ParticleState([0, 0, 0], [1.5, 0, 0], [0.6, 0, 0.8])
    horizon = 4.0

    def endpoint(n):
        tr = integrate_trajectory(init, spec, u, horizon / n, n)
        return np.concatenate([tr.positions[-1], tr.momenta[-1], tr.spins[-1]])

    ref = endpoint(256 * 16)
    errs = [np.abs(endpoint(n) - ref).max() for n in (64, 128, 256)]
    orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 3.8
    assert errs[1] / errs[2] >= 8.0


def test_trajectory_rejects_bad_input():
    init = ParticleState([0, 0, 0], [1, 0, 0], [0, 0, 1])
    with pytest.raises(StepTooSmall):
        integrate_trajectory(init, UNIFORM_Z, UnitSystem(), dt=0.0, n_steps=10)


def test_force_breakdown_total_exact():
    fb = ForceBreakdown(np.array([1.0, 0, 0]), np.array([0, 2.0, 0]),
                        np.array([0, 0, 3.0]))
    assert np.all(fb.total == np.array([1.0, 2.0, 3.0]))


def test_breakdown_accepts_mean_spin():
    # mean-field closure: spin expectation with norm below one is legitimate
    fb = force_breakdown_at([0, 0, 0], [2.0, 0, 0], [0, 0, 0.5], UNIFORM_Z,
                            UnitSystem(coupling=0.02))
    full = force_breakdown_at([0, 0, 0], [2.0, 0, 0], [0, 0, 1.0], UNIFORM_Z,
                              UnitSystem(coupling=0.02))
    assert np.allclose(fb.transverse, 0.5 * full.transverse, atol=1e-18)
