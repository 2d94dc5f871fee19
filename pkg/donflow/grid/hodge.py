"""Hodge decomposition of 2-form fields on the torus."""
from __future__ import annotations
from dataclasses import dataclass

import numpy as np

from ..algebra.forms import KForm
from ..exceptions import DegreeError, NotExactError
from .calculus import codifferential, d, inverse_laplacian
from .fields import KFormField

EXACTNESS_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class HodgeParts:
    """The pieces of a 2-form field.

    Attributes:
        exact (KFormField): dλ with λ = Δ⁻¹d*(field − mean); zero mean.
        harmonic (np.ndarray): The 6 constant coefficients (per-component mean).
        coexact_residual (KFormField): What is left; vanishes for closed input.
        potential (KFormField): The background potential λ (d*λ = 0, zero mean).
    """

    exact: KFormField
    harmonic: np.ndarray
    coexact_residual: KFormField
    potential: KFormField

    def harmonic_form(self) -> KForm:
        """The harmonic part as a constant 2-form value."""
        return KForm(2, self.harmonic.copy())

    def recombine(self) -> KFormField:
        """exact + harmonic + coexact residual."""
        harmonic = KFormField.constant(self.exact.grid, self.harmonic_form())
        return self.exact + harmonic + self.coexact_residual


def hodge_project(field: KFormField) -> HodgeParts:
    """Split a 2-form field into exact, harmonic and coexact parts.

    Args:
        field (KFormField): Any 2-form field.

    Returns:
        HodgeParts: The decomposition.
    """
    if field.degree != 2:
        raise DegreeError(field.degree, "2")
    harmonic = field.mean()
    centered = field - KFormField.constant(field.grid, KForm(2, harmonic))
    potential = inverse_laplacian(codifferential(centered))
    exact = d(potential)
    return HodgeParts(
        exact=exact,
        harmonic=harmonic,
        coexact_residual=centered - exact,
        potential=potential,
    )


def require_exact(field: KFormField, tolerance: float = EXACTNESS_TOLERANCE) -> HodgeParts:
    """Project and check that the harmonic and coexact parts are negligible.

    Raises:
        NotExactError: If either part exceeds ``tolerance`` (the residual
            relative to the field's L² norm).
    """
    parts = hodge_project(field)
    harmonic_norm = float(np.max(np.abs(parts.harmonic)))
    residual = float(np.sqrt(np.sum(parts.coexact_residual.coefficients**2)))
    scale = max(float(np.sqrt(np.sum(field.coefficients**2))), 1.0)
    if harmonic_norm > tolerance or residual > tolerance * scale:
        raise NotExactError(harmonic_norm, residual * field.grid.cell_volume**0.5)
    return parts
