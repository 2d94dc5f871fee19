"""L² pairings and the Donaldson metric on exact 2-forms."""
from __future__ import annotations
import enum

import numpy as np

from ..algebra.forms import KForm, wedge_scalar
from ..algebra.rho import RhoContext, apply_matrix, make_context, pairing_matrix, star_rho
from ..exceptions import DegreeError, FieldMismatchError
from .calculus import codifferential, gradient, laplacian_symbol
from .fields import KFormField
from .hodge import require_exact
from .solve import solve_spd

SPATIAL_AXES = (1, 2, 3, 4)
POTENTIAL_RTOL = 1e-11


class Gauge(enum.Enum):
    """Which potential represents an exact 2-form in the Donaldson metric."""

    RHO = "rho"
    BACKGROUND = "background"


def l2_inner(a: KFormField, b: KFormField) -> float:
    """∫⟨a, b⟩ dvol by the periodic trapezoidal rule."""
    if a.degree != b.degree or a.grid != b.grid:
        raise FieldMismatchError(
            f"degree {a.degree} on n={a.grid.n}", f"degree {b.degree} on n={b.grid.n}"
        )
    return float(np.sum(a.coefficients * b.coefficients)) * a.grid.cell_volume


def l2_norm(field: KFormField) -> float:
    """‖field‖_{L²}."""
    return float(np.sqrt(l2_inner(field, field)))


def relative_defect(left: KFormField, right: KFormField) -> float:
    """‖left − right‖ / max(‖left‖, ‖right‖), and 0 when both vanish."""
    scale = max(l2_norm(left), l2_norm(right))
    difference = l2_norm(left - right)
    if scale == 0.0:
        return difference
    return difference / scale


def rho_pairing(ctx: RhoContext, first: KForm, second: KForm) -> float:
    """∫ λ∧*^ρμ for 1-form fields λ, μ (the L²(g^ρ) pairing)."""
    if first.degree != 1 or second.degree != 1:
        raise DegreeError(first.degree if first.degree != 1 else second.degree, "1")
    grid = first.domain() or second.domain()
    return float(np.sum(wedge_scalar(first, star_rho(ctx, second)))) * grid.cell_volume


def minimal_potential(ctx: RhoContext, exact: KFormField) -> KFormField:
    """The potential λ of ``exact`` with *^ρλ exact.

    Starting from the background potential λ₀ this minimizes ∫λ∧*^ρλ over
    λ₀ + c + df (c constant, f a function). The normal equations are symmetric
    positive semidefinite in (c, f) and are solved matrix-free.

    Raises:
        NotExactError: If ``exact`` is not exact.
        LinearSolveError: If the solve fails.
    """
    grid = exact.grid
    base = require_exact(exact).potential
    metric = pairing_matrix(ctx)

    def lift(vector: np.ndarray) -> np.ndarray:
        shift = vector[:4].reshape(4, 1, 1, 1, 1)
        function = KFormField.scalar(grid, vector[4:].reshape(grid.shape))
        return shift + gradient(function)[:, 0]

    def lift_adjoint(one_form: np.ndarray) -> np.ndarray:
        # (Σ_x w, d*w): the Euclidean adjoint of (c, f) ↦ c + df
        divergence = codifferential(KFormField(1, one_form, grid)).values
        return np.concatenate([one_form.sum(axis=SPATIAL_AXES), divergence.ravel()])

    def normal(vector: np.ndarray) -> np.ndarray:
        return lift_adjoint(apply_matrix(metric, lift(vector)))

    shift_block = np.linalg.inv(metric.sum(axis=(2, 3, 4, 5)))
    average = float(np.mean(np.trace(metric)) / 4.0)
    symbol = laplacian_symbol(grid)
    function_block = np.where(symbol > 0.0, 1.0 / (average * np.where(symbol > 0.0, symbol, 1.0)), 0.0)

    def precondition(vector: np.ndarray) -> np.ndarray:
        shift = shift_block @ vector[:4]
        transform = np.fft.fftn(vector[4:].reshape(grid.shape)) * function_block
        return np.concatenate([shift, np.fft.ifftn(transform).real.ravel()])

    weighted = apply_matrix(metric, base.coefficients)
    rhs = -lift_adjoint(weighted)
    # ‖lift_adjoint(w)‖ ≤ √2·n²‖w‖; near a minimal base the rhs is round-off
    atol = POTENTIAL_RTOL * grid.n**2 * float(np.linalg.norm(weighted))
    correction = solve_spd(
        "minimal potential", normal, rhs, precondition, rtol=POTENTIAL_RTOL, atol=atol
    )
    return base.with_coefficients(1, base.coefficients + lift(correction))


def donaldson_inner(
    rho: KFormField,
    first: KFormField,
    second: KFormField,
    gauge: Gauge = Gauge.RHO,
    ctx: RhoContext | None = None,
) -> float:
    """⟨ρ̂₁, ρ̂₂⟩_ρ = ∫λ₁∧*^ρλ₂ for exact ρ̂_i = dλ_i.

    Args:
        rho (KFormField): The base point, nondegenerate everywhere.
        first (KFormField): Exact 2-form ρ̂₁.
        second (KFormField): Exact 2-form ρ̂₂.
        gauge (Gauge): ``RHO`` uses the potentials with *^ρλ exact (the value
            then does not depend on how either potential is chosen);
            ``BACKGROUND`` uses Δ⁻¹d*ρ̂ directly.
        ctx (RhoContext | None): Reuse an existing context of ``rho``.

    Returns:
        float: The pairing.

    Raises:
        NondegeneracyError: If ρ degenerates.
        NotExactError: If an argument is not exact.
    """
    ctx = ctx or make_context(rho)
    if gauge is Gauge.RHO:
        potentials = [minimal_potential(ctx, field) for field in (first, second)]
    else:
        potentials = [require_exact(field).potential for field in (first, second)]
    return rho_pairing(ctx, potentials[0], potentials[1])
