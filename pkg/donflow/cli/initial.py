"""Deterministic initial conditions."""
from __future__ import annotations
import logging

import numpy as np

from ..algebra.forms import KForm
from ..algebra.frame import FRAME_INDICES, STANDARD_FRAME
from ..algebra.rho import make_context
from ..config import InitialKind, RunConfig
from ..exceptions import ConfigValueError, DegenerateInitialError, NondegeneracyError
from ..grid.calculus import d
from ..grid.fields import KFormField
from ..grid.hodge import hodge_project
from ..grid.sampling import band_limited, make_rng
from ..grid.snapshot import read_snapshot
from ..grid.sobolev import sobolev_norm

logger = logging.getLogger(__name__)

# smallest admissible u of an initial field
MIN_INITIAL_U = 0.1
# tolerance on ‖dρ‖ for snapshot initial fields, relative to ‖ρ‖
CLOSEDNESS_TOLERANCE = 1e-10


def base_form(shift: tuple[float, float, float]) -> KForm:
    """ω₁ + Σ shift_i ω_i."""
    total = STANDARD_FRAME.form(1)
    for index, weight in zip(FRAME_INDICES, shift):
        total = total + STANDARD_FRAME.form(index).scaled(weight)
    return total


def _perturbed_minimum(config: RunConfig) -> KFormField:
    initial = config.initial
    rho = KFormField.constant(config.grid, base_form(initial.harmonic_shift))
    if initial.amplitude == 0:
        return rho
    rng = make_rng(initial.seed)
    potential = band_limited(
        rng, config.grid, 1, initial.max_mode, initial.spectral_decay
    )
    potential = potential / sobolev_norm(potential, 1, 2.0)
    return rho + d(potential) * initial.amplitude


def _from_snapshot(config: RunConfig) -> KFormField:
    path = config.initial.snapshot
    rho = read_snapshot(path, config.grid.scheme)  # type: ignore[arg-type]
    if rho.degree != 2 or rho.grid.n != config.grid.n:
        raise ConfigValueError(
            "initial.snapshot",
            path,
            f"a 2-form on n={config.grid.n} (file has degree {rho.degree}, n={rho.grid.n})",
        )
    residual = hodge_project(rho).coexact_residual.coefficients
    scale = max(float(np.max(np.abs(rho.coefficients))), 1.0)
    if float(np.max(np.abs(residual))) > CLOSEDNESS_TOLERANCE * scale:
        raise ConfigValueError("initial.snapshot", path, "a closed 2-form")
    return rho


def generate_initial(config: RunConfig) -> KFormField:
    """The initial field of a run.

    For ``perturbed_min`` this is ω₁ + Σ shift_i ω_i + ε dλ, with λ a seeded
    band-limited 1-form normalized to unit W^{1,2} norm.

    Raises:
        DegenerateInitialError: If min u ≤ 0.1.
        ConfigValueError: If a snapshot does not fit the configured grid.
    """
    if config.initial.kind is InitialKind.CUSTOM_SNAPSHOT:
        rho = _from_snapshot(config)
    else:
        rho = _perturbed_minimum(config)
    try:
        ctx = make_context(rho, config.tolerances.eps_deg)
    except NondegeneracyError as error:
        raise DegenerateInitialError(error.min_u) from error
    min_u = float(np.min(ctx.u))
    if min_u <= MIN_INITIAL_U:
        raise DegenerateInitialError(min_u)
    logger.info("Initial field: min u = %.12g", min_u)
    return rho
