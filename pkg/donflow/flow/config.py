"""Run parameters of the flow integrators."""
from __future__ import annotations
from dataclasses import dataclass, field
import enum

from ..exceptions import ConfigValueError
from ..grid.spec import GridSpec


class Integrator(enum.Enum):
    """Time integrator."""

    RK4 = "rk4"
    IMEX = "imex"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    Attributes:
        eps_deg (float): Smallest admissible u; the flow blows up below it.
        fixed_point_tol (float): Relative increment at which the semi-implicit
            inner iteration stops.
        fixed_point_max_iter (int): Inner iterations allowed per semi-implicit step.
        imex_factor (float): Implicit coefficient c as a multiple of the
            stiffness scale.
        harmonic_drift (float): Harmonic drift above which a warning is logged.
        exactness (float): Bound on the harmonic and coexact parts of fields
            that must be exact.
    """

    eps_deg: float = 1e-12
    fixed_point_tol: float = 1e-12
    fixed_point_max_iter: int = 50
    imex_factor: float = 1.5
    harmonic_drift: float = 1e-10
    exactness: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("eps_deg", "fixed_point_tol", "harmonic_drift", "exactness"):
            if not getattr(self, name) > 0:
                raise ConfigValueError(f"tolerances.{name}", getattr(self, name), "> 0")
        if self.fixed_point_max_iter < 1:
            raise ConfigValueError(
                "tolerances.fixed_point_max_iter", self.fixed_point_max_iter, ">= 1"
            )
        if self.imex_factor < 1:
            raise ConfigValueError("tolerances.imex_factor", self.imex_factor, ">= 1")


@dataclass(frozen=True)
class Schedule:
    """How the flow is stepped and sampled.

    Attributes:
        integrator (Integrator): ``rk4`` or ``imex``.
        dt (float | None): Fixed time step; ``none`` selects the CFL policy.
        cfl (float): Factor c_cfl of the CFL policy.
        t_end (float): Final time.
        projection_cadence (int): Steps between Hodge re-projections.
        output_cadence (int): Steps between diagnostics records.
        snapshot_cadence (int): Steps between snapshots; 0 writes none.
    """

    integrator: Integrator = Integrator.RK4
    dt: float | None = None
    cfl: float = 0.2
    t_end: float = 1.0
    projection_cadence: int = 10
    output_cadence: int = 1
    snapshot_cadence: int = 0

    def __post_init__(self) -> None:
        if self.dt is not None and not self.dt > 0:
            raise ConfigValueError("flow.dt", self.dt, "> 0 or none")
        if not self.cfl > 0:
            raise ConfigValueError("flow.cfl", self.cfl, "> 0")
        if not self.t_end >= 0:
            raise ConfigValueError("flow.t_end", self.t_end, ">= 0")
        for name in ("projection_cadence", "output_cadence"):
            if getattr(self, name) < 1:
                raise ConfigValueError(f"flow.{name}", getattr(self, name), ">= 1")
        if self.snapshot_cadence < 0:
            raise ConfigValueError("flow.snapshot_cadence", self.snapshot_cadence, ">= 0")


@dataclass(frozen=True)
class FlowConfig:
    """Everything a flow run needs besides the initial field.

    Attributes:
        grid (GridSpec): The lattice.
        schedule (Schedule): Integrator and cadences.
        tolerances (Tolerances): Numerical thresholds.
        seed (int): Seed recorded with the run's artifacts.
    """

    grid: GridSpec = field(default_factory=GridSpec)
    schedule: Schedule = field(default_factory=Schedule)
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
