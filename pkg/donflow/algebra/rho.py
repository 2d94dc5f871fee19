"""Operators attached to a nondegenerate 2-form ρ.

All of them are pointwise and work on batched values; a :class:`RhoContext`
caches u and the matrices every other operator needs.
"""
from __future__ import annotations
from dataclasses import dataclass
import logging

import numpy as np

from ..exceptions import DegreeError, NondegeneracyError, SingularStarError
from . import tables
from .forms import (
    KForm,
    basis_form,
    carrier_of,
    norm_squared,
    self_dual_part,
    star,
    two_form_matrix,
    wedge,
    wedge_scalar,
)
from .frame import STANDARD_FRAME

logger = logging.getLogger(__name__)

DEFAULT_EPS_DEG = 1e-12
SINGULARITY_RATIO = 1e-14


def apply_matrix(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Batched matrix-vector product for component-first layouts."""
    return np.einsum("ij...,j...->i...", matrix, vector)


def batched_inverse(matrix: np.ndarray) -> np.ndarray:
    """Invert a ``(m, m, *batch)`` stack of matrices."""
    stacked = np.moveaxis(matrix, (0, 1), (-2, -1))
    return np.moveaxis(np.linalg.inv(stacked), (-2, -1), (0, 1))


def batched_det(matrix: np.ndarray) -> np.ndarray:
    """Determinants of a ``(m, m, *batch)`` stack of matrices."""
    return np.linalg.det(np.moveaxis(matrix, (0, 1), (-2, -1)))


def sandwich_matrix(sigma: KForm, tau: KForm) -> np.ndarray:
    """Matrix of the Λ¹→Λ³ map λ ↦ σ∧*(τ∧λ).

    Returns:
        np.ndarray: Array of shape ``(4, 4, *batch)``, rows indexing Λ³.
    """
    outer = tables.wedge_table(2, 1)
    core = np.einsum("qaj,jc,cbi->qiab", outer, tables.star_table(3), outer)
    return np.einsum("qiab,a...,b...->qi...", core, sigma.coefficients, tau.coefficients)


@dataclass(frozen=True, eq=False)
class RhoContext:
    """Cached pointwise data of a nondegenerate 2-form.

    Attributes:
        rho (KForm): The 2-form ρ (value or field).
        u (np.ndarray): ρ∧ρ/(2 dvol), positive, with the batch shape.
        star_matrix (np.ndarray): Matrix A of *^ρ: Λ¹→Λ³, λ ↦ ρ∧*(ρ∧λ)/u.
        star_inverse (np.ndarray): A⁻¹.
        matrix (np.ndarray): Antisymmetric P with ρ(X, Y) = XᵀPY.
        matrix_inverse (np.ndarray): P⁻¹.
    """

    rho: KForm
    u: np.ndarray
    star_matrix: np.ndarray
    star_inverse: np.ndarray
    matrix: np.ndarray
    matrix_inverse: np.ndarray

    @property
    def eta(self) -> KForm:
        """η = ρ⁺/u."""
        return self_dual_part(self.rho).scaled(1.0 / self.u)


def make_context(rho: KForm, eps_deg: float = DEFAULT_EPS_DEG) -> RhoContext:
    """Build the context of ρ.

    Args:
        rho (KForm): A 2-form, single or batched.
        eps_deg (float): Smallest admissible u.

    Returns:
        RhoContext: The cached data.

    Raises:
        NondegeneracyError: If u <= eps_deg somewhere.
        SingularStarError: If the Λ¹→Λ³ matrix is numerically singular.
    """
    if rho.degree != 2:
        raise DegreeError(rho.degree, "2")
    u = 0.5 * wedge_scalar(rho, rho)
    degenerate = ~(u > eps_deg)
    if np.any(degenerate):
        raise NondegeneracyError(float(np.nanmin(u)), int(np.count_nonzero(degenerate)))
    star_matrix = sandwich_matrix(rho, rho) / u[None, None]
    scale = np.sum(star_matrix**2, axis=(0, 1)) ** 2
    ratio = np.abs(batched_det(star_matrix)) / scale
    if np.any(~(ratio > SINGULARITY_RATIO)):
        raise SingularStarError(float(np.min(ratio)))
    matrix = two_form_matrix(rho)
    return RhoContext(
        rho=rho,
        u=u,
        star_matrix=star_matrix,
        star_inverse=batched_inverse(star_matrix),
        matrix=matrix,
        matrix_inverse=batched_inverse(matrix),
    )


def R_rho(ctx: RhoContext, w: KForm) -> KForm:  # pylint: disable=invalid-name
    """R^ρ w = w − (w∧ρ/dvol_ρ) ρ."""
    if w.degree != 2:
        raise DegreeError(w.degree, "2")
    factor = wedge_scalar(w, ctx.rho) / ctx.u
    coefficients = w.coefficients - ctx.rho.coefficients * factor[None]
    return carrier_of(w, ctx.rho).with_coefficients(2, coefficients)


def star_rho(ctx: RhoContext, a: KForm) -> KForm:
    """Hodge star of the metric g^ρ.

    Degree 1 uses A directly, degree 3 solves A η = −a, degree 2 is R^ρ*R^ρ.
    Since dvol_{g^ρ} = dvol, degrees 0 and 4 are the background identifications.
    """
    carrier = carrier_of(a, ctx.rho)
    if a.degree == 1:
        return carrier.with_coefficients(3, apply_matrix(ctx.star_matrix, a.coefficients))
    if a.degree == 3:
        return carrier.with_coefficients(
            1, -apply_matrix(ctx.star_inverse, a.coefficients)
        )
    if a.degree == 2:
        return R_rho(ctx, star(R_rho(ctx, a)))
    return carrier.with_coefficients(4 - a.degree, a.coefficients)


def pairing_matrix(ctx: RhoContext) -> np.ndarray:
    """Symmetric G with λ∧*^ρμ = (λᵀ G μ) dvol on 1-forms."""
    top = tables.wedge_table(1, 3)[0]
    return np.einsum("ac,cb...->ab...", top, ctx.star_matrix)


def theta_rho(ctx: RhoContext) -> KForm:
    """Θ^ρ = *ρ/u − ½|ρ/u|²ρ."""
    weight = 0.5 * norm_squared(ctx.rho) / ctx.u**2
    return star(ctx.rho).scaled(1.0 / ctx.u) - ctx.rho.scaled(weight)


def theta_selfdual(ctx: RhoContext) -> KForm:
    """The same form written as 2ρ⁺/u − |ρ⁺/u|²ρ."""
    plus = self_dual_part(ctx.rho)
    return plus.scaled(2.0 / ctx.u) - ctx.rho.scaled(norm_squared(plus) / ctx.u**2)


def theta_derivative(ctx: RhoContext, rhohat: KForm) -> KForm:
    """Derivative of Θ^ρ in direction ρ̂: (ρ̂ + *^ρρ̂)/u − |ρ⁺/u|²ρ̂."""
    eta_squared = norm_squared(self_dual_part(ctx.rho)) / ctx.u**2
    return (rhohat + star_rho(ctx, rhohat)).scaled(1.0 / ctx.u) - rhohat.scaled(
        eta_squared
    )


def star_rho_derivative(ctx: RhoContext, rhohat: KForm, gamma: KForm) -> KForm:
    """Derivative of *^ρ on Λ³ in direction ρ̂, applied to γ.

    With *^ρ = −A⁻¹ on Λ³ this is A⁻¹ Ȧ A⁻¹ γ, where
    Ȧλ = (ρ̂∧*(ρ∧λ) + ρ∧*(ρ̂∧λ))/u − (u̇/u) Aλ and u̇ = ρ∧ρ̂/dvol.
    """
    if gamma.degree != 3:
        raise DegreeError(gamma.degree, "3")
    u_dot = wedge_scalar(ctx.rho, rhohat)
    a_dot = (
        sandwich_matrix(rhohat, ctx.rho) + sandwich_matrix(ctx.rho, rhohat)
    ) / ctx.u[None, None] - ctx.star_matrix * (u_dot / ctx.u)[None, None]
    inner_solve = apply_matrix(ctx.star_inverse, gamma.coefficients)
    result = apply_matrix(ctx.star_inverse, apply_matrix(a_dot, inner_solve))
    return carrier_of(gamma, rhohat, ctx.rho).with_coefficients(1, result)


def omega_rho(ctx: RhoContext, index: int) -> KForm:
    """ω_i^ρ = R^ρ ω_i."""
    return R_rho(ctx, STANDARD_FRAME.form(index))


def J_rho(ctx: RhoContext, index: int) -> np.ndarray:  # pylint: disable=invalid-name
    """The matrix J_i^ρ with ρ(J_i^ρ X, Y) = ρ(X, J_i Y).

    Solving the defining relation gives J_i^ρ = (P J_i P⁻¹)ᵀ.

    Returns:
        np.ndarray: Array of shape ``(4, 4, *batch)``.
    """
    background = STANDARD_FRAME.complex_structure(index)
    return np.einsum("ab...,bc,cd...->da...", ctx.matrix, background, ctx.matrix_inverse)


def J_rho_from_star(ctx: RhoContext, index: int) -> np.ndarray:  # pylint: disable=invalid-name
    """J_i^ρ read off from λ ↦ *^ρ(λ∧ω_i^ρ) = λ∘J_i^ρ on the coordinate covectors."""
    adapted = omega_rho(ctx, index)
    columns = [
        star_rho(ctx, wedge(basis_form(1, a), adapted)).coefficients for a in range(4)
    ]
    # columns[a][b] = J[a, b]
    return np.stack(columns, axis=0)


def compose_covector(covector: KForm, matrix: np.ndarray) -> KForm:
    """λ∘J, the 1-form X ↦ λ(JX); on coefficients this is Jᵀλ."""
    if covector.degree != 1:
        raise DegreeError(covector.degree, "1")
    coefficients = np.einsum("ab...,a...->b...", matrix, covector.coefficients)
    return covector.with_coefficients(1, coefficients)


def hamiltonian_vector(ctx: RhoContext, covector: KForm) -> np.ndarray:
    """The vector X with ρ(X, ·) = λ, i.e. PᵀX = λ, so X = −P⁻¹λ.

    Returns:
        np.ndarray: Components of X, shape ``(4, *batch)``.
    """
    if covector.degree != 1:
        raise DegreeError(covector.degree, "1")
    return -apply_matrix(ctx.matrix_inverse, covector.coefficients)


def contract(vector: np.ndarray, form: KForm) -> KForm:
    """Interior product ι(X)ρ of a vector with a 2-form, i.e. ρ(X, ·)."""
    if form.degree != 2:
        raise DegreeError(form.degree, "2")
    coefficients = np.einsum("a...,ab...->b...", vector, two_form_matrix(form))
    return form.with_coefficients(1, coefficients)
