"""The operator S^ρ from 1-forms to self-dual forms, its adjoint, and Poisson brackets.

η = ρ⁺/u throughout. ∇ is the flat componentwise derivative, and g(∇α, β)
is the 1-form whose a-th coefficient is ⟨∂_a α, β⟩.
"""
from __future__ import annotations

import numpy as np

from ..algebra.forms import KForm, inner, wedge, wedge_scalar
from ..algebra.rho import R_rho, RhoContext, hamiltonian_vector, star_rho
from ..flow.operators import codifferential_rho, context_of
from ..grid.calculus import d, gradient
from ..grid.fields import KFormField


def directional_derivative(field: KFormField, vector: np.ndarray) -> KFormField:
    """∇_X field = Σ_a X^a ∂_a field."""
    coefficients = np.einsum("a...,ac...->c...", vector, gradient(field))
    return field.with_coefficients(field.degree, coefficients)


def gradient_pairing(first: KFormField, second: KForm) -> KFormField:
    """g(∇first, second): the 1-form a ↦ ⟨∂_a first, second⟩."""
    coefficients = np.stack(
        [
            inner(first.with_coefficients(first.degree, partial), second)
            for partial in gradient(first)
        ]
    )
    return first.with_coefficients(1, coefficients)


def s_rho(rho: KFormField, one_form: KFormField, ctx: RhoContext | None = None) -> KFormField:
    """S^ρλ = −R^ρ d^{+ρ}λ + u ∇_{X_λ} η, with d^{+ρ} = (d + *^ρd)/2.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    ctx = context_of(rho, ctx)
    derivative = d(one_form)
    self_dual = (derivative + star_rho(ctx, derivative)) * 0.5
    transport = directional_derivative(ctx.eta, hamiltonian_vector(ctx, one_form))  # type: ignore[arg-type]
    return -R_rho(ctx, self_dual) + transport * ctx.u  # type: ignore[return-value]


def s_rho_adjoint(rho: KFormField, xi: KFormField, ctx: RhoContext | None = None) -> KFormField:
    """(S^ρ)^{*ρ}ξ = −d^{*ρ}(R^ρξ) + *^ρ(g(∇η, ξ)∧ρ).

    The adjoint pairs the background L² product on self-dual forms with
    ∫λ∧*^ρμ on 1-forms.
    """
    ctx = context_of(rho, ctx)
    reflected = R_rho(ctx, xi)
    correction = wedge(gradient_pairing(ctx.eta, xi), rho)  # type: ignore[arg-type]
    return -codifferential_rho(ctx, reflected) + star_rho(ctx, correction)  # type: ignore[return-value,operator]


def s_rho_adjoint_selfdual(
    rho: KFormField, xi: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """*^ρ(dξ − g(∇ξ, η)∧ρ), equal to (S^ρ)^{*ρ}ξ for self-dual ξ."""
    ctx = context_of(rho, ctx)
    correction = wedge(gradient_pairing(xi, ctx.eta), rho)
    return star_rho(ctx, d(xi) - correction)  # type: ignore[return-value]


def poisson_bracket(
    rho: KFormField, first: KFormField, second: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """{f, g}_ρ = (df∧dg∧ρ)/dvol_ρ, which equals ρ(X_f, X_g).

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    ctx = context_of(rho, ctx)
    values = wedge_scalar(wedge(d(first), d(second)), rho) / ctx.u
    return KFormField.scalar(rho.grid, values)
