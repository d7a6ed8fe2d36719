"""Exact 2x2 Pauli operator algebra.

An operator is stored by its coefficients in the basis {I, sigma_x, sigma_y,
sigma_z}:

    M = c0*I + cx*sigma_x + cy*sigma_y + cz*sigma_z

The coefficient representation is canonical; dense 2x2 matrices are a derived
view used for oracle checks. Products use the closed form

    (a0 + a.sigma)(b0 + b.sigma) = (a0*b0 + a.b) + (a0*b + b0*a + i a x b).sigma

which is bit-for-bit equivalent to dense matrix multiplication up to rounding.

Ordering convention for every contraction of operator-valued vectors: the
operand written first in a formula is leftmost in operator products, e.g.
(A x B)_k = eps_kij A_i B_j with A_i to the left. With that convention the
cross product of the sigma vector with itself is 2i*sigma componentwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonHermitianInput, UnnormalizedState

__all__ = [
    "PauliOp",
    "OpVec3",
    "SpinState",
    "IDENTITY",
    "ZERO",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA",
    "mul",
    "commutator",
    "anticommutator",
    "op_cross",
    "op_dot",
    "cross_vec_op",
    "exp_i",
    "bloch_vector",
    "expectation",
    "spinor_from_bloch",
    "apply",
    "coeff_distance",
    "bloch_expectation",
]

HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class PauliOp:
    """Element of the complex Pauli algebra c0*I + c.sigma."""

    c0: complex = 0j
    cx: complex = 0j
    cy: complex = 0j
    cz: complex = 0j

    def __post_init__(self):
        # keep coefficients as plain complex regardless of what numpy
        # scalar types arithmetic hands us
        for name in ("c0", "cx", "cy", "cz"):
            v = getattr(self, name)
            if type(v) is not complex:
                object.__setattr__(self, name, complex(v))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "PauliOp") -> "PauliOp":
        return PauliOp(self.c0 + other.c0, self.cx + other.cx,
                       self.cy + other.cy, self.cz + other.cz)

    def __sub__(self, other: "PauliOp") -> "PauliOp":
        return PauliOp(self.c0 - other.c0, self.cx - other.cx,
                       self.cy - other.cy, self.cz - other.cz)

    def __neg__(self) -> "PauliOp":
        return PauliOp(-self.c0, -self.cx, -self.cy, -self.cz)

    def __mul__(self, scalar: complex) -> "PauliOp":
        return PauliOp(self.c0 * scalar, self.cx * scalar,
                       self.cy * scalar, self.cz * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliOp") -> "PauliOp":
        return mul(self, other)

    # -- views and predicates ------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.c0, self.cx, self.cy, self.cz], dtype=complex)

    @property
    def vec(self) -> np.ndarray:
        """The sigma part (cx, cy, cz)."""
        return np.array([self.cx, self.cy, self.cz], dtype=complex)

    def dagger(self) -> "PauliOp":
        return PauliOp(self.c0.conjugate(), self.cx.conjugate(),
                       self.cy.conjugate(), self.cz.conjugate())

    def traceless(self) -> "PauliOp":
        return PauliOp(0j, self.cx, self.cy, self.cz)

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return max(abs(self.c0.imag), abs(self.cx.imag),
                   abs(self.cy.imag), abs(self.cz.imag)) <= tol

    def norm(self) -> float:
        """Frobenius norm of the 2x2 matrix."""
        return math.sqrt(2.0 * (abs(self.c0) ** 2 + abs(self.cx) ** 2
                                + abs(self.cy) ** 2 + abs(self.cz) ** 2))

    def to_matrix(self) -> np.ndarray:
        c0, cx, cy, cz = self.c0, self.cx, self.cy, self.cz
        return np.array([[c0 + cz, cx - 1j * cy],
                         [cx + 1j * cy, c0 - cz]], dtype=complex)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "PauliOp":
        m = np.asarray(m, dtype=complex)
        c0 = 0.5 * (m[0, 0] + m[1, 1])
        cz = 0.5 * (m[0, 0] - m[1, 1])
        cx = 0.5 * (m[0, 1] + m[1, 0])
        cy = 0.5j * (m[0, 1] - m[1, 0])
        return cls(c0, cx, cy, cz)

    @classmethod
    def from_vec(cls, v, c0: complex = 0j) -> "PauliOp":
        v = np.asarray(v)
        return cls(complex(c0), complex(v[0]), complex(v[1]), complex(v[2]))


IDENTITY = PauliOp(1.0 + 0j)
ZERO = PauliOp()
SIGMA_X = PauliOp(0j, 1.0 + 0j, 0j, 0j)
SIGMA_Y = PauliOp(0j, 0j, 1.0 + 0j, 0j)
SIGMA_Z = PauliOp(0j, 0j, 0j, 1.0 + 0j)


def mul(a: PauliOp, b: PauliOp) -> PauliOp:
    """Operator product in coefficient space."""
    c0 = a.c0 * b.c0 + a.cx * b.cx + a.cy * b.cy + a.cz * b.cz
    cx = a.c0 * b.cx + b.c0 * a.cx + 1j * (a.cy * b.cz - a.cz * b.cy)
    cy = a.c0 * b.cy + b.c0 * a.cy + 1j * (a.cz * b.cx - a.cx * b.cz)
    cz = a.c0 * b.cz + b.c0 * a.cz + 1j * (a.cx * b.cy - a.cy * b.cx)
    return PauliOp(c0, cx, cy, cz)


def commutator(a: PauliOp, b: PauliOp) -> PauliOp:
    return mul(a, b) - mul(b, a)


def anticommutator(a: PauliOp, b: PauliOp) -> PauliOp:
    return mul(a, b) + mul(b, a)


@dataclass(frozen=True)
class OpVec3:
    """Cartesian 3-vector with PauliOp components."""

    x: PauliOp = ZERO
    y: PauliOp = ZERO
    z: PauliOp = ZERO

    def __add__(self, other: "OpVec3") -> "OpVec3":
        return OpVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "OpVec3") -> "OpVec3":
        return OpVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "OpVec3":
        return OpVec3(-self.x, -self.y, -self.z)

    def __mul__(self, scalar: complex) -> "OpVec3":
        return OpVec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i: int) -> PauliOp:
        return (self.x, self.y, self.z)[i]

    def dagger(self) -> "OpVec3":
        return OpVec3(self.x.dagger(), self.y.dagger(), self.z.dagger())

    def norm(self) -> float:
        """Largest componentwise Frobenius norm."""
        return max(self.x.norm(), self.y.norm(), self.z.norm())

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return all(c.is_hermitian(tol) for c in self)


SIGMA = OpVec3(SIGMA_X, SIGMA_Y, SIGMA_Z)


def op_cross(a: OpVec3, b: OpVec3) -> OpVec3:
    """(a x b)_k = eps_kij a_i b_j with a's component leftmost in each product."""
    return OpVec3(
        mul(a.y, b.z) - mul(a.z, b.y),
        mul(a.z, b.x) - mul(a.x, b.z),
        mul(a.x, b.y) - mul(a.y, b.x),
    )


def cross_vec_op(u, a: OpVec3) -> OpVec3:
    """(u x a)_k = eps_kij u_i a_j for a real 3-vector u."""
    u = np.asarray(u, dtype=float)
    return OpVec3(
        a.z * u[1] - a.y * u[2],
        a.x * u[2] - a.z * u[0],
        a.y * u[0] - a.x * u[1],
    )


def op_dot(a, b: OpVec3) -> PauliOp:
    """Contraction sum_i a_i b_i.

    `a` may be a real 3-vector (scalar contraction) or another OpVec3, in
    which case a's components sit to the left of b's in every product.
    """
    if isinstance(a, OpVec3):
        return mul(a.x, b.x) + mul(a.y, b.y) + mul(a.z, b.z)
    a = np.asarray(a, dtype=float)
    return b.x * a[0] + b.y * a[1] + b.z * a[2]


def exp_i(h: PauliOp, tol: float = HERMITICITY_TOL) -> PauliOp:
    """exp(i*h) for Hermitian h, in closed SU(2) form.

    exp(i(c0 + theta n.sigma)) = e^{i c0} (cos(theta) I + i sin(theta) n.sigma).
    sin(theta)/theta is evaluated with numpy's sinc, which is exact at 0.
    """
    if not h.is_hermitian(tol):
        raise NonHermitianInput(
            f"imaginary coefficient magnitude exceeds {tol:g}")
    a0 = h.c0.real
    ax, ay, az = h.cx.real, h.cy.real, h.cz.real
    theta = math.sqrt(ax * ax + ay * ay + az * az)
    phase = complex(math.cos(a0), math.sin(a0))
    sinc = float(np.sinc(theta / math.pi))  # sin(theta)/theta
    cosv = math.cos(theta)
    return PauliOp(phase * cosv, phase * 1j * sinc * ax,
                   phase * 1j * sinc * ay, phase * 1j * sinc * az)


@dataclass(frozen=True)
class SpinState:
    """Normalized two-component spinor."""

    up: complex
    down: complex

    def norm_sq(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)


def _require_normalized(s: SpinState, tol: float = 1e-9) -> None:
    if abs(s.norm_sq() - 1.0) > tol:
        raise UnnormalizedState(f"|up|^2+|down|^2 = {s.norm_sq():.12g}")


def bloch_vector(s: SpinState) -> np.ndarray:
    """(<sigma_x>, <sigma_y>, <sigma_z>) of a normalized spinor."""
    _require_normalized(s)
    ud = s.up.conjugate() * s.down
    return np.array([2.0 * ud.real, 2.0 * ud.imag,
                     abs(s.up) ** 2 - abs(s.down) ** 2])


def expectation(s: SpinState, op: PauliOp) -> complex:
    """<s| op |s>; real up to rounding when op is Hermitian."""
    _require_normalized(s)
    n = bloch_vector(s)
    return op.c0 + op.cx * n[0] + op.cy * n[1] + op.cz * n[2]


def bloch_expectation(op: PauliOp, n) -> float:
    """Real part of c0 + c.n for a Bloch (or mean-spin) vector n.

    Unlike `expectation` this does not require |n| = 1, so it also serves
    mean-field closures where n is a contracted spin expectation.
    """
    n = np.asarray(n, dtype=float)
    return (op.c0 + op.cx * n[0] + op.cy * n[1] + op.cz * n[2]).real


def spinor_from_bloch(n) -> SpinState:
    """Spin-1/2 state with <sigma> = n for a unit vector n."""
    n = np.asarray(n, dtype=float)
    length = float(np.linalg.norm(n))
    if abs(length - 1.0) > 1e-9:
        raise UnnormalizedState(f"|n| = {length:.12g}")
    theta = math.acos(max(-1.0, min(1.0, n[2])))
    phi = math.atan2(n[1], n[0])
    return SpinState(complex(math.cos(theta / 2.0)),
                     complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0))


def apply(op: PauliOp, s: SpinState) -> SpinState:
    """Matrix action op|s> (result is not renormalized)."""
    up = (op.c0 + op.cz) * s.up + (op.cx - 1j * op.cy) * s.down
    down = (op.cx + 1j * op.cy) * s.up + (op.c0 - op.cz) * s.down
    return SpinState(up, down)


def coeff_distance(a: PauliOp, b: PauliOp) -> float:
    """Largest absolute coefficient difference; the workhorse test metric."""
    return max(abs(a.c0 - b.c0), abs(a.cx - b.cx),
               abs(a.cy - b.cy), abs(a.cz - b.cz))
