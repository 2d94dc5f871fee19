"""Flow states and diagnostics records."""
from __future__ import annotations
from dataclasses import astuple, dataclass, fields
import math

from ..grid.fields import KFormField


@dataclass(frozen=True, eq=False)
class FlowState:
    """ρ at time t.

    Attributes:
        rho (KFormField): The closed, nondegenerate 2-form.
        t (float): Time.
        step (int): Number of steps taken.
    """

    rho: KFormField
    t: float = 0.0
    step: int = 0

    def advanced(self, rho: KFormField, dt: float) -> FlowState:
        """The state one step of size ``dt`` later."""
        return FlowState(rho, self.t + dt, self.step + 1)


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Scalar observables at one recorded time.

    Attributes:
        t (float): Time.
        energy (float): E(ρ).
        min_u (float): Smallest u on the grid.
        norm_drho (float): ‖dρ‖_{L²}.
        harm_drift (float): Largest change of a harmonic coefficient since t = 0.
        grad_norm_sq (float): ‖ρ̇‖²_ρ in the Donaldson metric.
        dist_to_min (float): L² distance to the constant critical point of the class.
        w1p_norm (float): W^{1,2} norm of ρ minus that critical point.
    """

    t: float
    energy: float
    min_u: float
    norm_drho: float
    harm_drift: float
    grad_norm_sq: float
    dist_to_min: float
    w1p_norm: float

    @classmethod
    def columns(cls) -> list[str]:
        """CSV header names, in order."""
        return [item.name for item in fields(cls)]

    def values(self) -> tuple[float, ...]:
        return astuple(self)

    def is_finite(self) -> bool:
        return all(math.isfinite(value) for value in self.values())
