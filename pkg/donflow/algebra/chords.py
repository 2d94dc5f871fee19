"""The negative-chords property of the pointwise constraint set.

Pairs ρ₁, ρ₂ with ρ_i∧ρ_i = dvol and ρ_i⁺ = λ_iθ (λ_i ≥ 1) for a fixed unit
self-dual θ always satisfy (ρ₁−ρ₂)∧(ρ₁−ρ₂) ≤ 0, with equality only when they
coincide.
"""
from __future__ import annotations
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConstraintError
from .forms import KForm, norm_squared, sd_split, star, wedge_scalar
from .frame import ANTI_SELF_DUAL_FRAME, STANDARD_FRAME

DEFAULT_TOLERANCE = 1e-10


def _require(reason: str, defect: np.ndarray, tolerance: float) -> None:
    worst = float(np.max(defect))
    if not worst <= tolerance:
        raise ConstraintError(reason, worst)


def negative_chords_defect(
    theta: KForm,
    rho1: KForm,
    rho2: KForm,
    tolerance: float = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """(ρ₁−ρ₂)²/dvol after validating that both forms lie on the constraint set.

    Args:
        theta (KForm): Self-dual θ with θ∧θ = dvol.
        rho1 (KForm): First constrained 2-form.
        rho2 (KForm): Second constrained 2-form.
        tolerance (float): Allowed violation of each precondition.

    Returns:
        np.ndarray: The chord square, one value per batch entry.

    Raises:
        ConstraintError: If θ or either ρ_i fails a precondition.
    """
    _require("theta self-dual", np.abs(theta.coefficients - star(theta).coefficients), tolerance)
    _require("theta^2 = dvol", np.abs(wedge_scalar(theta, theta) - 1.0), tolerance)
    for name, rho in (("rho1", rho1), ("rho2", rho2)):
        _require(f"{name}^2 = dvol", np.abs(wedge_scalar(rho, rho) - 1.0), tolerance)
        plus, _ = sd_split(rho)
        lam = np.sum(plus.coefficients * theta.coefficients, axis=0)
        residual = np.sqrt(norm_squared(plus - theta.scaled(lam)))
        _require(f"{name}+ parallel to theta", residual / np.maximum(1.0, np.abs(lam)), tolerance)
        _require(f"{name} lambda >= 1", 1.0 - lam, tolerance)
    chord = rho1 - rho2
    return wedge_scalar(chord, chord)


@dataclass(frozen=True, eq=False)
class ConstraintSample:
    """A batch of constraint-set pairs sharing one θ per entry.

    Attributes:
        theta (KForm): Unit self-dual forms.
        rho1 (KForm): First members.
        rho2 (KForm): Second members.
        lambdas (np.ndarray): Shape ``(2, batch)``, the factors λ₁, λ₂.
    """

    theta: KForm
    rho1: KForm
    rho2: KForm
    lambdas: np.ndarray


def _unit_combination(rng: np.random.Generator, frame: tuple[KForm, ...], size: int) -> KForm:
    weights = rng.standard_normal((3, size))
    weights /= np.linalg.norm(weights, axis=0)
    # |Σ c_i ω_i|² = 2|c|²
    coefficients = sum(
        np.outer(frame[i].coefficients, weights[i]) for i in range(3)
    ) / np.sqrt(2.0)
    return KForm(2, coefficients)


def sample_constraint_pairs(
    rng: np.random.Generator, size: int, lambda_max: float = 3.0
) -> ConstraintSample:
    """Draw pairs ρ_i = λ_iθ + √(λ_i²−1)·ν_i with unit anti-self-dual ν_i.

    Args:
        rng (np.random.Generator): Source of randomness.
        size (int): Number of pairs.
        lambda_max (float): Upper bound of λ_i, drawn uniformly from [1, lambda_max].

    Returns:
        ConstraintSample: The batch.
    """
    theta = _unit_combination(rng, STANDARD_FRAME.omega, size)
    lambdas = 1.0 + (lambda_max - 1.0) * rng.random((2, size))
    members = []
    for lam in lambdas:
        nu = _unit_combination(rng, ANTI_SELF_DUAL_FRAME, size)
        members.append(theta.scaled(lam) + nu.scaled(np.sqrt(lam**2 - 1.0)))
    return ConstraintSample(theta, members[0], members[1], lambdas)
