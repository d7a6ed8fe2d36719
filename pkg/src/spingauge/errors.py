"""Exception types shared across the package.

Every numerical precondition violation maps to one of these, so callers (and
the CLI, which turns them into exit codes) can tell configuration mistakes
apart from physics-level failures.
"""


class SpinGaugeError(Exception):
    """Base class for all package errors."""


class NonHermitianInput(SpinGaugeError):
    """Operator expected to be Hermitian has imaginary coefficients beyond tolerance."""


class UnnormalizedState(SpinGaugeError):
    """Spinor state norm differs from 1 beyond tolerance."""


class UnnormalizedSpin(SpinGaugeError):
    """Bloch vector length differs from 1 beyond tolerance."""


class UnnormalizedField(SpinGaugeError):
    """Wavepacket norm differs from 1 beyond tolerance."""


class StepTooSmall(SpinGaugeError):
    """Finite-difference step is below the supported floor."""


class NonFiniteState(SpinGaugeError):
    """Trajectory state overflowed or became NaN."""


class UnresolvableWavepacket(SpinGaugeError):
    """Gaussian width too narrow for the grid or too wide for the box."""


class StabilityBound(SpinGaugeError):
    """Time step violates the phase-accuracy bound of the split-step evolver."""


class UnsupportedFieldSpec(SpinGaugeError):
    """Field specification outside what the requested operation supports."""


class MismatchedScenarios(SpinGaugeError):
    """Paired runs differ in more than the quantity under comparison."""


class ParseError(SpinGaugeError):
    """Config text is syntactically invalid; carries line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(SpinGaugeError):
    """Config parsed but a field is semantically invalid; carries the field name."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class BoundaryContamination(UserWarning):
    """More than the allowed norm fraction sits near the periodic boundary."""
