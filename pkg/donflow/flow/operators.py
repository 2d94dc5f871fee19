"""The energy, the flow vector field and its linearization.

Every function takes an optional :class:`RhoContext` so callers that evaluate
several operators at the same ρ build the pointwise matrices once.
"""
from __future__ import annotations
import logging

import numpy as np

from ..algebra.forms import KForm, norm_squared, self_dual_part, wedge
from ..algebra.rho import (
    DEFAULT_EPS_DEG,
    RhoContext,
    make_context,
    pairing_matrix,
    star_rho,
    star_rho_derivative,
    theta_derivative,
    theta_rho,
)
from ..grid.calculus import d, spectral_radius
from ..grid.fields import KFormField
from ..grid.hodge import EXACTNESS_TOLERANCE, require_exact
from ..grid.inner import rho_pairing

logger = logging.getLogger(__name__)


def context_of(
    rho: KFormField, ctx: RhoContext | None = None, eps_deg: float = DEFAULT_EPS_DEG
) -> RhoContext:
    """Return ``ctx`` if given, else build the context of ``rho``."""
    return ctx if ctx is not None else make_context(rho, eps_deg)


def _function(grid_field: KFormField, values: np.ndarray) -> KFormField:
    return KFormField.scalar(grid_field.grid, values)


def energy(rho: KFormField, ctx: RhoContext | None = None) -> float:
    """E(ρ) = ∫ 2|ρ⁺|²/(|ρ⁺|² − |ρ⁻|²) dvol.

    The denominator is ρ∧ρ/dvol = 2u, so the integrand is |ρ⁺|²/u ≥ 2.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    ctx = context_of(rho, ctx)
    integrand = norm_squared(self_dual_part(rho)) / ctx.u
    return float(np.sum(integrand)) * rho.grid.cell_volume


def codifferential_rho(ctx: RhoContext, form: KFormField) -> KFormField:
    """d^{*ρ} = −*^ρ d *^ρ, the codifferential of the metric g^ρ."""
    return -star_rho(ctx, d(star_rho(ctx, form)))  # type: ignore[arg-type,return-value]


def flow_potential(rho: KFormField, ctx: RhoContext | None = None) -> KFormField:
    """μ = *^ρ dΘ^ρ, so that ∂ρ/∂t = dμ.

    *^ρμ = −dΘ^ρ is exact, so μ is the potential the Donaldson metric uses.
    """
    ctx = context_of(rho, ctx)
    return star_rho(ctx, d(theta_rho(ctx)))  # type: ignore[arg-type,return-value]


def flow_rhs(rho: KFormField, ctx: RhoContext | None = None) -> KFormField:
    """The Donaldson flow vector field d *^ρ d Θ^ρ.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    return d(flow_potential(rho, ctx))


def grad_norm_sq(rho: KFormField, ctx: RhoContext | None = None) -> float:
    """‖∂ρ/∂t‖²_ρ, the squared Donaldson norm of the flow vector field."""
    ctx = context_of(rho, ctx)
    potential = flow_potential(rho, ctx)
    return rho_pairing(ctx, potential, potential)


def linearized_operator(
    rho: KFormField,
    rhohat: KFormField,
    ctx: RhoContext | None = None,
    tolerance: float = EXACTNESS_TOLERANCE,
) -> KFormField:
    """L_ρ ρ̂ = −d(*^ρ dθ̂ + ∗̂ dΘ^ρ), the negative derivative of :func:`flow_rhs`.

    θ̂ is the pointwise derivative of Θ^ρ and ∗̂ that of *^ρ on 3-forms, both in
    direction ρ̂, so flow_rhs(ρ + ρ̂) − flow_rhs(ρ) + L_ρρ̂ is quadratic in ρ̂.

    Args:
        rho (KFormField): Base point.
        rhohat (KFormField): Exact direction.
        ctx (RhoContext | None): Context of ``rho``.
        tolerance (float): Exactness tolerance for ``rhohat``.

    Returns:
        KFormField: L_ρ ρ̂.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
        NotExactError: If ``rhohat`` is not exact.
    """
    ctx = context_of(rho, ctx)
    require_exact(rhohat, tolerance)
    varied_star = star_rho(ctx, d(theta_derivative(ctx, rhohat)))
    varied_metric = star_rho_derivative(ctx, rhohat, d(theta_rho(ctx)))
    return -d(varied_star + varied_metric)  # type: ignore[operator]


def principal_part(
    rho: KFormField, rhohat: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """d((1/u) d^{*ρ} ρ̂), the second-order part of L_ρ."""
    ctx = context_of(rho, ctx)
    return d(codifferential_rho(ctx, rhohat) / ctx.u)


def lower_order_part(
    rho: KFormField, rhohat: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """The remainder A^ρρ̂ of L_ρ for closed ρ̂.

    A^ρρ̂ = d*^ρ((du/u²)∧(ρ̂ + *^ρρ̂)) + d*^ρ(d|η|²∧ρ̂) − d∗̂dΘ^ρ, with η = ρ⁺/u.
    """
    ctx = context_of(rho, ctx)
    u = _function(rho, ctx.u)
    eta_squared = _function(rho, norm_squared(ctx.eta))
    weighted = d(u) / ctx.u**2
    volume_term = wedge(weighted, rhohat + star_rho(ctx, rhohat))
    eta_term = wedge(d(eta_squared), rhohat)
    metric_term = star_rho_derivative(ctx, rhohat, d(theta_rho(ctx)))
    return (
        d(star_rho(ctx, volume_term))
        + d(star_rho(ctx, eta_term))
        - d(metric_term)  # type: ignore[arg-type]
    )


def stiffness_scale(ctx: RhoContext) -> float:
    """max over the grid of λ_max(G)/u, with G the pointwise g^ρ pairing matrix."""
    metric = np.moveaxis(pairing_matrix(ctx), (0, 1), (-2, -1))
    largest = np.linalg.eigvalsh(metric)[..., -1]
    return float(np.max(largest / ctx.u))


def cfl_time_step(cfl: float, rho: KFormField, ctx: RhoContext | None = None) -> float:
    """dt = c_cfl·h²·min u / s_max with s_max = stiffness·h²·(largest Δ eigenvalue)."""
    ctx = context_of(rho, ctx)
    grid = rho.grid
    s_max = stiffness_scale(ctx) * grid.h**2 * spectral_radius(grid)
    dt = cfl * grid.h**2 * float(np.min(ctx.u)) / s_max
    logger.debug("CFL time step %.6g (s_max %.6g)", dt, s_max)
    return dt


def constant_critical_point(harmonic: np.ndarray, grid_field: KFormField) -> KFormField:
    """The constant field with the given harmonic coefficients."""
    return KFormField.constant(grid_field.grid, KForm(2, np.asarray(harmonic, dtype=float)))
