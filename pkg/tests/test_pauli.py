"""Pauli algebra: closed-form products against dense matrix oracles."""

import numpy as np
import pytest
from scipy.linalg import expm

from spingauge.errors import NonHermitianInput, UnnormalizedState
from spingauge.pauli import (
    IDENTITY,
    SIGMA,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    OpVec3,
    PauliOp,
    SpinState,
    apply,
    bloch_vector,
    coeff_distance,
    commutator,
    cross_vec_op,
    exp_i,
    expectation,
    mul,
    op_cross,
    op_dot,
    spinor_from_bloch,
)

RNG_SEED = 20240811


def random_op(rng) -> PauliOp:
    c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return PauliOp(*c)


def random_hermitian(rng, scale=1.0) -> PauliOp:
    return PauliOp(*(scale * rng.standard_normal(4)))


def dense_cross(a: OpVec3, b: OpVec3) -> list:
    """Independent eps-tensor evaluation on dense 2x2 matrices."""
    am = [c.to_matrix() for c in a]
    bm = [c.to_matrix() for c in b]
    eps = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    out = []
    for k in range(3):
        m = np.zeros((2, 2), dtype=complex)
        for i in range(3):
            for j in range(3):
                if eps[k, i, j] != 0.0:
                    m += eps[k, i, j] * (am[i] @ bm[j])
        out.append(m)
    return out


def test_matrix_round_trip():
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(50):
        op = random_op(rng)
        back = PauliOp.from_matrix(op.to_matrix())
        assert coeff_distance(op, back) <= 1e-14


def test_standard_products():
    assert coeff_distance(mul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z) == 0.0
    assert coeff_distance(mul(SIGMA_Z, SIGMA_Z), IDENTITY) == 0.0
    rng = np.random.default_rng(RNG_SEED + 1)
    x = random_op(rng)
    assert coeff_distance(mul(IDENTITY, x), x) == 0.0
    assert coeff_distance(mul(x, IDENTITY), x) == 0.0


def test_mul_matches_dense_kernel():
    rng = np.random.default_rng(RNG_SEED + 2)
    worst = 0.0
    for _ in range(1000):
        a, b = random_op(rng), random_op(rng)
        dense = PauliOp.from_matrix(a.to_matrix() @ b.to_matrix())
        worst = max(worst, coeff_distance(mul(a, b), dense))
    assert worst <= 1e-13


def test_anticommutation_exact():
    sig = [SIGMA_X, SIGMA_Y, SIGMA_Z]
    for i in range(3):
        for j in range(3):
            anti = mul(sig[i], sig[j]) + mul(sig[j], sig[i])
            expected = 2.0 * IDENTITY if i == j else PauliOp()
            assert coeff_distance(anti, expected) == 0.0


def test_commutators():
    assert coeff_distance(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z) == 0.0
    assert coeff_distance(commutator(SIGMA_Y, SIGMA_X), -2j * SIGMA_Z) == 0.0
    rng = np.random.default_rng(RNG_SEED + 3)
    x = random_op(rng)
    assert coeff_distance(commutator(x, x), PauliOp()) == 0.0


def test_sigma_cross_sigma():
    out = op_cross(SIGMA, SIGMA)
    for got, want in zip(out, SIGMA):
        assert coeff_distance(got, 2j * want) <= 1e-14


def test_cross_of_commuting_components_vanishes():
    a = OpVec3(1.5 * IDENTITY, -0.5 * IDENTITY, 2.0 * IDENTITY)
    out = op_cross(a, a)
    for c in out:
        assert coeff_distance(c, PauliOp()) == 0.0


def test_cross_matches_dense_oracle():
    # the field-shaped case E=(0,0,1): A = (-sigma_y, sigma_x, 0)
    a = OpVec3(-SIGMA_Y, SIGMA_X, PauliOp())
    got = op_cross(a, a)
    want = dense_cross(a, a)
    for comp, m in zip(got, want):
        assert coeff_distance(comp, PauliOp.from_matrix(m)) <= 1e-14
    assert coeff_distance(got.z, 2j * SIGMA_Z) <= 1e-14
    assert coeff_distance(got.x, PauliOp()) <= 1e-14
    assert coeff_distance(got.y, PauliOp()) <= 1e-14
    # random operator vectors
    rng = np.random.default_rng(RNG_SEED + 4)
    for _ in range(100):
        u = OpVec3(random_op(rng), random_op(rng), random_op(rng))
        v = OpVec3(random_op(rng), random_op(rng), random_op(rng))
        got = op_cross(u, v)
        for comp, m in zip(got, dense_cross(u, v)):
            assert coeff_distance(comp, PauliOp.from_matrix(m)) <= 1e-13


def test_op_dot_real_vector():
    assert coeff_distance(op_dot((0.0, 0.0, 1.0), SIGMA), SIGMA_Z) == 0.0
    assert coeff_distance(op_dot((0.0, 0.0, 0.0), SIGMA), PauliOp()) == 0.0


def test_op_dot_momentum_gauge_identity():
    # p.(E x sigma) = sigma.(p x E) for p=(1,0,0), E=(0,0,1) gives -sigma_y
    e_cross_sigma = OpVec3(-SIGMA_Y, SIGMA_X, PauliOp())
    p = np.array([1.0, 0.0, 0.0])
    got = op_dot(p, e_cross_sigma)
    assert coeff_distance(got, -SIGMA_Y) <= 1e-14
    # dense oracle for the same contraction
    dense = sum((p[i] * c.to_matrix() for i, c in enumerate(e_cross_sigma)),
                np.zeros((2, 2), dtype=complex))
    assert coeff_distance(got, PauliOp.from_matrix(dense)) <= 1e-14


def test_triple_product_ordering_identity():
    # A x (B x C) = B (A.C) - (A.B) C when B has real (commuting) components,
    # with the written order kept left to right.
    rng = np.random.default_rng(RNG_SEED + 5)
    for _ in range(50):
        e = rng.standard_normal(3)
        a = cross_vec_op(e, SIGMA) * -1.0  # (E x sigma) as an operator vector
        b_real = rng.standard_normal(3)
        b = OpVec3(*(PauliOp(complex(v)) for v in b_real))
        c = SIGMA
        lhs = op_cross(a, op_cross(b, c))
        rhs_first = op_dot(a, c)  # A.C with A leftmost
        rhs = OpVec3(mul(PauliOp(complex(b_real[0])), rhs_first),
                     mul(PauliOp(complex(b_real[1])), rhs_first),
                     mul(PauliOp(complex(b_real[2])), rhs_first))
        ab = op_dot(b_real, a)
        rhs = rhs - OpVec3(mul(ab, c.x), mul(ab, c.y), mul(ab, c.z))
        for l, r in zip(lhs, rhs):
            assert coeff_distance(l, r) <= 1e-13
        # and brute force agrees with the lhs
        for comp, m in zip(lhs, dense_cross(a, op_cross(b, c))):
            assert coeff_distance(comp, PauliOp.from_matrix(m)) <= 1e-13


def test_cross_vec_op_matches_promoted_cross():
    rng = np.random.default_rng(RNG_SEED + 6)
    for _ in range(20):
        u = rng.standard_normal(3)
        a = OpVec3(random_op(rng), random_op(rng), random_op(rng))
        promoted = OpVec3(*(PauliOp(complex(c)) for c in u))
        got = cross_vec_op(u, a)
        want = op_cross(promoted, a)
        for l, r in zip(got, want):
            assert coeff_distance(l, r) <= 1e-14


def test_exp_identity_and_half_turn():
    assert coeff_distance(exp_i(PauliOp()), IDENTITY) == 0.0
    got = exp_i(np.pi * SIGMA_Z)
    assert coeff_distance(got, -1.0 * IDENTITY) <= 1e-15


def test_exp_small_angle_closed_form():
    got = exp_i(0.3 * SIGMA_Y)
    want = PauliOp(np.cos(0.3), 0j, 1j * np.sin(0.3), 0j)
    assert coeff_distance(got, want) <= 1e-15


def test_exp_against_expm_oracle():
    rng = np.random.default_rng(RNG_SEED + 7)
    for _ in range(100):
        h = random_hermitian(rng, scale=2.0)
        got = exp_i(h).to_matrix()
        want = expm(1j * h.to_matrix())
        assert np.max(np.abs(got - want)) <= 1e-12


def test_exp_tiny_angle_stability():
    h = 1e-9 * SIGMA_X
    got = exp_i(h)
    assert abs(got.cx - 1e-9j) <= 1e-24
    assert abs(got.c0 - 1.0) <= 1e-17


def test_exp_unitarity_and_determinant():
    rng = np.random.default_rng(RNG_SEED + 8)
    for _ in range(200):
        h = random_hermitian(rng, scale=5.0)
        u = exp_i(h)
        uu = mul(u, u.dagger())
        assert coeff_distance(uu, IDENTITY) <= 1e-12
        det = u.c0 ** 2 - (u.cx ** 2 + u.cy ** 2 + u.cz ** 2)
        want = np.exp(2j * h.c0.real)
        assert abs(det - want) <= 1e-12
        su = exp_i(h.traceless())
        det1 = su.c0 ** 2 - (su.cx ** 2 + su.cy ** 2 + su.cz ** 2)
        assert abs(det1 - 1.0) <= 1e-12


def test_exp_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        exp_i(PauliOp(0j, 1j, 0j, 0j))


def test_hermiticity_predicate():
    assert PauliOp(1.0, 0.5, -0.25, 3.0).is_hermitian()
    assert not PauliOp(1.0, 0.5 + 1e-6j, 0j, 0j).is_hermitian()


def test_bloch_cardinal_states():
    s = 1.0 / np.sqrt(2.0)
    assert np.allclose(bloch_vector(SpinState(1.0, 0.0)), [0, 0, 1])
    assert np.allclose(bloch_vector(SpinState(s, s)), [1, 0, 0])
    assert np.allclose(bloch_vector(SpinState(s, 1j * s)), [0, 1, 0])


def test_bloch_unit_norm_random():
    rng = np.random.default_rng(RNG_SEED + 9)
    for _ in range(100):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        n = bloch_vector(SpinState(*v))
        assert abs(np.linalg.norm(n) - 1.0) <= 1e-12


def test_bloch_rejects_unnormalized():
    with pytest.raises(UnnormalizedState):
        bloch_vector(SpinState(1.0, 1.0))


def test_expectation_values():
    assert abs(expectation(SpinState(1.0, 0.0), SIGMA_Z) - 1.0) == 0.0
    assert abs(expectation(SpinState(1.0, 0.0), SIGMA_X)) == 0.0
    s = 1.0 / np.sqrt(2.0)
    op = PauliOp(0.7, 0.2, -0.4, 1.1)
    got = expectation(SpinState(s, s), op)
    assert abs(got - (0.7 + 0.2)) <= 1e-12
    # Hermitian operators give real expectations
    rng = np.random.default_rng(RNG_SEED + 10)
    for _ in range(50):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        h = random_hermitian(rng)
        assert abs(expectation(SpinState(*v), h).imag) <= 1e-12


def test_spinor_round_trip():
    rng = np.random.default_rng(RNG_SEED + 11)
    for _ in range(50):
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        s = spinor_from_bloch(n)
        assert np.max(np.abs(bloch_vector(s) - n)) <= 1e-12


def test_apply_matches_dense():
    rng = np.random.default_rng(RNG_SEED + 12)
    op = random_op(rng)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    v /= np.linalg.norm(v)
    got = apply(op, SpinState(*v)).as_array()
    want = op.to_matrix() @ v
    assert np.max(np.abs(got - want)) <= 1e-14


def test_from_vec_and_traceless():
    op = PauliOp.from_vec([1.0, -2.0, 0.5], c0=3.0)
    assert op == PauliOp(3.0 + 0j, 1.0 + 0j, -2.0 + 0j, 0.5 + 0j)
    assert op.traceless() == PauliOp(0j, 1.0 + 0j, -2.0 + 0j, 0.5 + 0j)
    assert np.allclose(op.vec, [1.0, -2.0, 0.5])


def test_frobenius_norm_matches_dense():
    rng = np.random.default_rng(RNG_SEED + 13)
    for _ in range(20):
        op = random_op(rng)
        dense = np.linalg.norm(op.to_matrix(), "fro")
        assert abs(op.norm() - dense) <= 1e-12


def test_coefficients_are_plain_complex():
    op = PauliOp(np.float64(1.5), np.complex128(2j), 0, 1)
    assert all(type(c) is complex for c in (op.c0, op.cx, op.cy, op.cz))
    scaled = op * np.float64(2.0)
    assert type(scaled.c0) is complex
