"""Integrate the flow from an initial field to t_end."""
from __future__ import annotations
import logging
import math
from typing import Callable

from ..exceptions import BlowUpError
from ..grid.fields import KFormField
from ..grid.hodge import hodge_project
from .config import FlowConfig
from .diagnostics import compute_diagnostics
from .integrators import make_stepper
from .operators import cfl_time_step, context_of
from .state import DiagnosticsRecord, FlowState

logger = logging.getLogger(__name__)

SnapshotHook = Callable[[FlowState], None]

# relative slack when comparing consecutive energies
ENERGY_SLACK = 1e-12


def run(
    config: FlowConfig,
    initial: KFormField,
    on_snapshot: SnapshotHook | None = None,
) -> tuple[FlowState, list[DiagnosticsRecord]]:
    """Integrate from ``initial`` until ``config.schedule.t_end``.

    The step is fixed for the whole run: ``schedule.dt`` or the CFL step at
    the initial field. The last step is shortened to land on t_end.
    Diagnostics are recorded at t = 0, every ``output_cadence`` steps and at
    the final time.

    Args:
        config (FlowConfig): Run parameters.
        initial (KFormField): Closed, nondegenerate initial field.
        on_snapshot (SnapshotHook | None): Called with the state at t = 0,
            every ``snapshot_cadence`` steps and at the end.

    Returns:
        tuple[FlowState, list[DiagnosticsRecord]]: Final state and the records.

    Raises:
        BlowUpError: Carrying the last good state and the records so far.
        FixedPointDivergence: From the semi-implicit stepper.
    """
    schedule = config.schedule
    eps_deg = config.tolerances.eps_deg
    context_of(initial, eps_deg=eps_deg)
    initial_harmonic = hodge_project(initial).harmonic
    stepper = make_stepper(config, initial)
    dt = schedule.dt if schedule.dt is not None else cfl_time_step(schedule.cfl, initial)
    steps = max(math.ceil(schedule.t_end / dt - 1e-9), 0) if schedule.t_end > 0 else 0
    logger.info(
        "Integrating with %s to t=%g: %d steps of dt=%.6g on n=%d (%s)",
        schedule.integrator.value,
        schedule.t_end,
        steps,
        dt,
        config.grid.n,
        config.grid.scheme.value,
    )

    state = FlowState(initial)
    records = [compute_diagnostics(state, initial_harmonic, eps_deg)]
    if on_snapshot is not None:
        on_snapshot(state)
    for index in range(steps):
        step_size = min(dt, schedule.t_end - state.t) if index == steps - 1 else dt
        try:
            state = stepper.step(state, step_size)
        except BlowUpError as error:
            logger.error("Blow-up at step %d: %s", state.step + 1, error.reason)
            raise BlowUpError(state, records, error.reason) from error
        last = index == steps - 1
        if last or state.step % schedule.output_cadence == 0:
            record = compute_diagnostics(state, initial_harmonic, eps_deg)
            _check_record(record, records[-1], config)
            records.append(record)
            logger.info(
                "t=%.6g energy=%.12g min_u=%.6g dist=%.6g",
                record.t,
                record.energy,
                record.min_u,
                record.dist_to_min,
            )
        if on_snapshot is not None and (
            last
            or (schedule.snapshot_cadence and state.step % schedule.snapshot_cadence == 0)
        ):
            on_snapshot(state)
    return state, records


def _check_record(
    record: DiagnosticsRecord, previous: DiagnosticsRecord, config: FlowConfig
) -> None:
    if record.energy > previous.energy * (1 + ENERGY_SLACK):
        logger.warning(
            "Energy increased from %.17g to %.17g at t=%.6g",
            previous.energy,
            record.energy,
            record.t,
        )
    if record.harm_drift > config.tolerances.harmonic_drift:
        logger.warning(
            "Harmonic drift %.3g exceeds %.3g at t=%.6g",
            record.harm_drift,
            config.tolerances.harmonic_drift,
            record.t,
        )
