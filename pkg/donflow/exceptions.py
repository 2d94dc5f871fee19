"""The exceptions associated with donflow."""

from __future__ import annotations
from typing import Any, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from .flow.state import DiagnosticsRecord, FlowState


class DonflowError(Exception):
    """Base class for exceptions raised by donflow."""


class NondegeneracyError(DonflowError):
    """A 2-form is degenerate somewhere: u = ρ∧ρ/(2 dvol) is not positive.

    Attributes:
        min_u (float): The smallest value of u that was found.
        count (int): How many points violate the bound.
    """

    def __init__(self, min_u: float, count: int = 1) -> None:
        """Initialize the NondegeneracyError.

        Args:
            min_u (float): The smallest value of u that was found.
            count (int): How many points violate the bound.
        """
        super().__init__(
            f"2-form is degenerate at {count} point(s): min u = {min_u:.6g}"
        )
        self.min_u = min_u
        self.count = count


class SingularStarError(DonflowError):
    """The pointwise matrix of *^ρ on 1-forms is numerically singular.

    Attributes:
        min_abs_det (float): The smallest absolute determinant found.
    """

    def __init__(self, min_abs_det: float) -> None:
        super().__init__(
            f"*^rho matrix is numerically singular (min |det| = {min_abs_det:.3g})"
        )
        self.min_abs_det = min_abs_det


class ConstraintError(DonflowError):
    """Inputs of the negative-chords check are not on the constraint set.

    Attributes:
        reason (str): Which precondition failed.
        defect (float): By how much it failed.
    """

    def __init__(self, reason: str, defect: float) -> None:
        super().__init__(f"Constraint violated ({reason}): defect {defect:.3g}")
        self.reason = reason
        self.defect = defect


class FieldMismatchError(DonflowError):
    """Two fields do not live on the same grid or have different degrees.

    Attributes:
        left (Any): Description of the first operand.
        right (Any): Description of the second operand.
    """

    def __init__(self, left: Any, right: Any) -> None:
        super().__init__(f"Incompatible operands: {left} vs {right}")
        self.left = left
        self.right = right


class InvalidGridError(DonflowError):
    """The grid size is not a power of two of at least 4.

    Attributes:
        n (int): The rejected number of points per axis.
    """

    def __init__(self, n: int) -> None:
        super().__init__(f"Grid size must be a power of two >= 4, got {n}")
        self.n = n


class NotExactError(DonflowError):
    """A 2-form field that should be exact is not.

    Attributes:
        harmonic_norm (float): Largest absolute harmonic coefficient.
        residual_norm (float): L² norm of the coexact residual.
    """

    def __init__(self, harmonic_norm: float, residual_norm: float) -> None:
        super().__init__(
            "Field is not exact: "
            f"harmonic part {harmonic_norm:.3g}, coexact residual {residual_norm:.3g}"
        )
        self.harmonic_norm = harmonic_norm
        self.residual_norm = residual_norm


class LinearSolveError(DonflowError):
    """A matrix-free conjugate-gradient solve did not converge.

    Attributes:
        solver (str): Which solve failed.
        info (int): The scipy status code.
    """

    def __init__(self, solver: str, info: int) -> None:
        super().__init__(f"{solver} did not converge (scipy info={info})")
        self.solver = solver
        self.info = info


class BlowUpError(DonflowError):
    """The flow left the space of symplectic forms or produced non-finite values.

    Attributes:
        state (FlowState): The last good state before the failure.
        records (list[DiagnosticsRecord]): Diagnostics emitted so far.
        reason (str): What was detected.
    """

    def __init__(
        self,
        state: FlowState,
        records: Sequence[DiagnosticsRecord],
        reason: str,
    ) -> None:
        """Initialize the BlowUpError.

        Args:
            state (FlowState): The last good state before the failure.
            records (Sequence[DiagnosticsRecord]): Diagnostics emitted so far.
            reason (str): What was detected.
        """
        super().__init__(f"Blow-up after t={state.t:.6g} (step {state.step}): {reason}")
        self.state = state
        self.records = list(records)
        self.reason = reason


class FixedPointDivergence(DonflowError):
    """The inner fixed-point iteration of the semi-implicit step did not contract.

    Attributes:
        ratios (list[float]): Observed contraction ratios.
    """

    def __init__(self, ratios: Sequence[float]) -> None:
        last = ratios[-1] if ratios else float("nan")
        super().__init__(
            f"Fixed-point iteration failed after {len(ratios) + 1} iterations "
            f"(last contraction ratio {last:.3g})"
        )
        self.ratios = list(ratios)


class NewtonDivergence(DonflowError):
    """Newton inversion of the K-map failed to reduce the residual.

    Attributes:
        residuals (list[float]): L² residual after every accepted iteration.
    """

    def __init__(self, residuals: Sequence[float]) -> None:
        super().__init__(
            f"Newton iteration stalled at residual {residuals[-1]:.3g} "
            f"after {len(residuals) - 1} iterations"
        )
        self.residuals = list(residuals)


class SnapshotFormatError(DonflowError):
    """A snapshot file does not follow the DONF layout.

    Attributes:
        reason (str): What is wrong with the file.
    """

    def __init__(self, reason: str) -> None:
        super().__init__(f"Malformed snapshot: {reason}")
        self.reason = reason


class ConfigError(DonflowError):
    """Base class for configuration problems.

    Attributes:
        key (str | None): Dotted key of the offending entry, if known.
    """

    def __init__(self, message: str, key: str | None = None) -> None:
        super().__init__(message)
        self.key = key


class ConfigSyntaxError(ConfigError):
    """A configuration line is not of the form ``key = value``.

    Attributes:
        line_number (int): 1-based line number.
        line (str): The offending line.
    """

    def __init__(self, line_number: int, line: str, key: str | None = None) -> None:
        super().__init__(f"Line {line_number}: cannot parse {line!r}", key)
        self.line_number = line_number
        self.line = line


class UnknownKeyError(ConfigError):
    """The configuration contains a key that no section declares."""

    def __init__(self, key: str) -> None:
        super().__init__(f"Unknown configuration key {key!r}", key)


class MissingKeyError(ConfigError):
    """A required configuration key is absent."""

    def __init__(self, key: str) -> None:
        super().__init__(f"Missing required configuration key {key!r}", key)


class ConfigValueError(ConfigError):
    """A configuration value does not match its schema.

    Attributes:
        value (Any): The rejected value.
        schema (Any): The schema the value should match.
    """

    def __init__(self, key: str, value: Any, schema: Any) -> None:
        """Initialize the ConfigValueError.

        Args:
            key (str): Dotted key of the offending entry.
            value (Any): The rejected value.
            schema (Any): The schema the value should match.
        """
        super().__init__(f"{key}: {value!r} does not match {schema}", key)
        self.value = value
        self.schema = schema


class CannotParseTypeError(ConfigError):
    """No registered parser handles a configuration field type.

    Attributes:
        argtype (Any): The type that cannot be parsed.
    """

    def __init__(self, argtype: Any) -> None:
        super().__init__(f"Cannot parse type {argtype}")
        self.argtype = argtype


class DegenerateInitialError(ConfigError):
    """The configured initial condition is too close to degenerate.

    Attributes:
        min_u (float): Smallest u of the generated field.
    """

    def __init__(self, min_u: float, key: str = "initial.amplitude") -> None:
        super().__init__(
            f"Initial condition has min u = {min_u:.6g} <= 0.1; reduce {key}", key
        )
        self.min_u = min_u


class DegreeError(DonflowError):
    """An operation was asked for a form degree outside its domain.

    Attributes:
        degree (int): The rejected degree.
    """

    def __init__(self, degree: int, allowed: str) -> None:
        super().__init__(f"Form degree {degree} not allowed here (expected {allowed})")
        self.degree = degree
