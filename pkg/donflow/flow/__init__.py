"""The Donaldson flow: energy, vector field, linearization and integrators."""
from .config import FlowConfig, Integrator, Schedule, Tolerances
from .diagnostics import (
    compute_diagnostics,
    decay_rate_fit,
    read_diagnostics_csv,
    render_diagnostics_csv,
    write_diagnostics_csv,
)
from .integrators import (
    ImexStepper,
    RungeKutta4Stepper,
    Stepper,
    make_stepper,
    step_imex,
    step_rk4,
)
from .operators import (
    cfl_time_step,
    codifferential_rho,
    energy,
    flow_potential,
    flow_rhs,
    grad_norm_sq,
    linearized_operator,
    lower_order_part,
    principal_part,
    stiffness_scale,
)
from .runner import run
from .state import DiagnosticsRecord, FlowState

__all__ = [
    "DiagnosticsRecord",
    "FlowConfig",
    "FlowState",
    "ImexStepper",
    "Integrator",
    "RungeKutta4Stepper",
    "Schedule",
    "Stepper",
    "Tolerances",
    "cfl_time_step",
    "codifferential_rho",
    "compute_diagnostics",
    "decay_rate_fit",
    "energy",
    "flow_potential",
    "flow_rhs",
    "grad_norm_sq",
    "linearized_operator",
    "lower_order_part",
    "make_stepper",
    "principal_part",
    "read_diagnostics_csv",
    "render_diagnostics_csv",
    "run",
    "step_imex",
    "step_rk4",
    "stiffness_scale",
    "write_diagnostics_csv",
]
