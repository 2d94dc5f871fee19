"""Per-step observables and the diagnostics CSV."""
from __future__ import annotations
import csv
import io
import math
import os
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..atomic import write_atomic
from ..grid.calculus import d
from ..grid.hodge import hodge_project
from ..grid.inner import l2_norm
from ..grid.sobolev import sobolev_norm
from .operators import constant_critical_point, context_of, energy, grad_norm_sq
from .state import DiagnosticsRecord, FlowState

SOBOLEV_ORDER = 1
SOBOLEV_EXPONENT = 2.0


def compute_diagnostics(
    state: FlowState, initial_harmonic: np.ndarray, eps_deg: float = 1e-12
) -> DiagnosticsRecord:
    """All observables of one state.

    Args:
        state (FlowState): The state.
        initial_harmonic (np.ndarray): Harmonic coefficients at t = 0.
        eps_deg (float): Degeneracy threshold.

    Returns:
        DiagnosticsRecord: The record.
    """
    rho = state.rho
    ctx = context_of(rho, eps_deg=eps_deg)
    harmonic = hodge_project(rho).harmonic
    minimum = constant_critical_point(initial_harmonic, rho)
    offset = rho - minimum
    return DiagnosticsRecord(
        t=state.t,
        energy=energy(rho, ctx),
        min_u=float(np.min(ctx.u)),
        norm_drho=l2_norm(d(rho)),
        harm_drift=float(np.max(np.abs(harmonic - initial_harmonic))),
        grad_norm_sq=grad_norm_sq(rho, ctx),
        dist_to_min=l2_norm(offset),
        w1p_norm=sobolev_norm(offset, SOBOLEV_ORDER, SOBOLEV_EXPONENT),
    )


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return f"{value:.17g}"


def render_diagnostics_csv(records: Iterable[DiagnosticsRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(DiagnosticsRecord.columns())
    for record in records:
        writer.writerow([format_float(value) for value in record.values()])
    return buffer.getvalue()


def write_diagnostics_csv(
    path: str | os.PathLike[str], records: Sequence[DiagnosticsRecord]
) -> Path:
    """Write ``diagnostics.csv`` atomically."""
    return write_atomic(path, render_diagnostics_csv(records))


def read_diagnostics_csv(path: str | os.PathLike[str]) -> list[DiagnosticsRecord]:
    with Path(path).open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        return [
            DiagnosticsRecord(**{name: float(row[name]) for name in DiagnosticsRecord.columns()})
            for row in reader
        ]


def decay_rate_fit(records: Sequence[DiagnosticsRecord]) -> float:
    """−slope of a least-squares fit of log(dist_to_min) against t.

    Only records from the second half of the run with a positive distance
    are used; the result is ``nan`` with fewer than two of them.
    """
    if not records:
        return math.nan
    t_end = records[-1].t
    usable = [
        record
        for record in records
        if record.t >= t_end / 2 and record.dist_to_min > 0.0
    ]
    if len(usable) < 2:
        return math.nan
    times = np.array([record.t for record in usable])
    logs = np.log([record.dist_to_min for record in usable])
    slope, _ = np.polyfit(times, logs, 1)
    return float(-slope)
