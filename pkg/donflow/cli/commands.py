"""The ``run``, ``check`` and ``compare`` commands.

Commands return an exit status for outcomes they judge themselves (a failed
check) and raise :class:`DonflowError` for everything else; ``main`` maps
those exceptions to statuses.
"""
from __future__ import annotations
from dataclasses import replace
import logging
import os
from pathlib import Path
import sys
from typing import Any, Callable, Iterator, TextIO

from ..config import RunConfig, load_config, resolve_output_directory
from ..exceptions import BlowUpError, DonflowError
from ..flow.diagnostics import decay_rate_fit, write_diagnostics_csv
from ..flow.runner import run
from ..flow.state import DiagnosticsRecord, FlowState
from ..grid.fields import KFormField
from ..grid.snapshot import write_snapshot
from ..kmap.reduced import reduced_consistency
from .artifacts import (
    CONSISTENCY_NAME,
    DIAGNOSTICS_NAME,
    ERROR_NAME,
    REPORT_NAME,
    SNAPSHOT_DIRECTORY,
    error_payload,
    snapshot_name,
    stamped,
    write_json,
    write_text,
)
from .checks import CheckLevel, render_table, run_checks
from .initial import generate_initial
from .plots import line_chart

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

COMPARE_SLICES = 3


class ErrorReporting:
    """Writes ``error.json`` into the output directory when a command fails.

    Attributes:
        directory (Path): The output directory.
        seed (int | None): Seed recorded with the error.
    """

    def __init__(self, directory: Path, seed: int | None = None) -> None:
        self.directory = directory
        self.seed = seed

    def __enter__(self) -> ErrorReporting:
        return self

    def __exit__(self, kind: Any, error: BaseException | None, traceback: Any) -> None:
        if isinstance(error, DonflowError):
            error.artifact = write_json(  # type: ignore[attr-defined]
                self.directory / ERROR_NAME, error_payload(error, self.seed)
            )


def _snapshot_writer(directory: Path) -> Callable[[FlowState], None]:
    def write(state: FlowState) -> None:
        write_snapshot(directory / SNAPSHOT_DIRECTORY / snapshot_name(state.step), state.rho)

    return write


def _report(
    records: list[DiagnosticsRecord], state: FlowState, blowup: bool, seed: int
) -> dict[str, Any]:
    return stamped(
        {
            "final_t": state.t,
            "final_energy": records[-1].energy if records else None,
            "min_u_overall": min(record.min_u for record in records) if records else None,
            "blowup": blowup,
            "decay_rate_fit": decay_rate_fit(records),
            "steps": state.step,
            "records": len(records),
        },
        seed,
    )


def _plots(directory: Path, records: list[DiagnosticsRecord]) -> None:
    times = [record.t for record in records]
    write_text(
        directory / "energy.svg",
        line_chart(times, [record.energy for record in records], "Energy", y_label="E"),
    )
    distances = [record.dist_to_min for record in records]
    if any(distance > 0 for distance in distances):
        write_text(
            directory / "distance.svg",
            line_chart(
                times, distances, "Distance to minimum", y_label="dist", log_y=True
            ),
        )


def cmd_run(config_path: str | os.PathLike[str], out: str | None = None) -> int:
    """Integrate the configured flow and write its artifacts.

    Writes diagnostics.csv, report.json, snapshots at the configured cadence
    and, if enabled, energy.svg and distance.svg. On blow-up the last good
    state is written as a snapshot and the partial diagnostics are kept
    before the error propagates.

    Raises:
        ConfigError: If the configuration is invalid.
        BlowUpError: If the flow degenerates.
    """
    config = load_config(config_path)
    directory = resolve_output_directory(config, out)
    seed = config.initial.seed
    with ErrorReporting(directory, seed):
        initial = generate_initial(config)
        hook = _snapshot_writer(directory) if config.flow.snapshot_cadence else None
        try:
            state, records = run(config.flow_config(), initial, hook)
        except BlowUpError as error:
            _snapshot_writer(directory)(error.state)
            write_diagnostics_csv(directory / DIAGNOSTICS_NAME, error.records)
            write_json(directory / REPORT_NAME, _report(error.records, error.state, True, seed))
            raise
        write_diagnostics_csv(directory / DIAGNOSTICS_NAME, records)
        report = _report(records, state, False, seed)
        write_json(directory / REPORT_NAME, report)
        if config.output.emit_svg:
            _plots(directory, records)
    logger.info(
        "Run finished at t=%g: energy %.12g, decay rate %s",
        state.t,
        records[-1].energy,
        report["decay_rate_fit"],
    )
    return EXIT_OK


def cmd_check(level: CheckLevel | str = CheckLevel.FAST, stream: TextIO | None = None) -> int:
    """Run the invariant suites and print the defect table.

    Returns:
        int: 0 if every check passes, 1 otherwise.
    """
    level = CheckLevel(level)
    stream = stream or sys.stdout
    results = run_checks(level)
    render_table(results, stream)
    failed = [result.name for result in results if not result.passed]
    for name in failed:
        logger.error("Invariant failed: %s", name)
    return EXIT_INVARIANT if failed else EXIT_OK


def _time_slices(config: RunConfig, initial: KFormField) -> Iterator[tuple[float, KFormField]]:
    """States at equal fractions of ``flow.t_end``, each continuing the last."""
    horizon = config.flow.t_end / COMPARE_SLICES
    leg = replace(config.flow_config(), schedule=replace(config.flow, t_end=horizon))
    rho, offset = initial, 0.0
    for _ in range(COMPARE_SLICES):
        state, _ = run(leg, rho)
        rho, offset = state.rho, offset + state.t
        yield offset, rho


def cmd_compare(config_path: str | os.PathLike[str], out: str | None = None) -> int:
    """Cross-check the routes to ∂(ρ⁺/u)/∂t on the initial field and three time slices.

    Writes consistency.json with one report per time.

    Raises:
        ConfigError: If the configuration is invalid.
        BlowUpError: If the short run degenerates.
    """
    config = load_config(config_path)
    directory = resolve_output_directory(config, out)
    seed = config.initial.seed
    with ErrorReporting(directory, seed):
        initial = generate_initial(config)
        slices = [(0.0, initial)]
        if config.flow.t_end > 0:
            slices.extend(_time_slices(config, initial))
        reports = []
        for time, rho in slices:
            report = reduced_consistency(rho, seed=seed).to_json()
            reports.append({**report, "t": time})
            logger.info("t=%g: max defect %.3g", time, max(report["rel_defect"]))
        payload = stamped(
            {
                "slices": reports,
                "max_defect": max(max(report["rel_defect"]) for report in reports),
                "grid_n": config.grid.n,
                "scheme": config.grid.scheme.value,
            },
            seed,
        )
        write_json(directory / CONSISTENCY_NAME, payload)
    return EXIT_OK
