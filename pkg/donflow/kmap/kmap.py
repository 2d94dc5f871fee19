"""The K-map ρ ↦ ρ⁺/u and its linearization."""
from __future__ import annotations
from dataclasses import dataclass
import logging

import numpy as np

from ..algebra.forms import self_dual_part, star, wedge_scalar
from ..algebra.frame import FRAME_INDICES, STANDARD_FRAME
from ..algebra.rho import R_rho, RhoContext, star_rho
from ..exceptions import DonflowError
from ..flow.operators import context_of
from ..grid.fields import KFormField
from ..grid.inner import l2_inner, l2_norm
from ..grid.sampling import random_exact
from ..grid.spec import GridSpec

logger = logging.getLogger(__name__)


def kmap(rho: KFormField, ctx: RhoContext | None = None) -> KFormField:
    """K(ρ) = (ρ + *ρ)/(2u), a self-dual field.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    return context_of(rho, ctx).eta  # type: ignore[return-value]


def kmap_linearized(
    rho: KFormField, rhohat: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """K̂ρ̂ = (1/u) R^ρ ρ̂^{+ρ} with ρ̂^{+ρ} = (ρ̂ + *^ρρ̂)/2."""
    ctx = context_of(rho, ctx)
    rho_self_dual = (rhohat + star_rho(ctx, rhohat)) * 0.5
    return R_rho(ctx, rho_self_dual) / ctx.u  # type: ignore[return-value]


def kmap_linearized_adjoint(
    rho: KFormField, xi: KFormField, ctx: RhoContext | None = None
) -> KFormField:
    """The pointwise Euclidean adjoint of :func:`kmap_linearized`.

    K̂*ξ = (1/u)(ξ⁺ − (⟨ρ, ξ⁺⟩/u) *ρ).
    """
    ctx = context_of(rho, ctx)
    plus = self_dual_part(xi)
    weight = wedge_scalar(ctx.rho, plus) / ctx.u
    return (plus - star(ctx.rho).scaled(weight)) / ctx.u  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class KTriple:
    """The coefficients of 2ρ⁺/u in the standard frame.

    Attributes:
        K (tuple[KFormField, KFormField, KFormField]): Functions
            K_i = ρ∧ω_i/dvol_ρ.
    """

    K: tuple[KFormField, KFormField, KFormField]

    def function(self, index: int) -> KFormField:
        """K_index for index in 1..3."""
        return self.K[index - 1]

    def recombine(self) -> KFormField:
        """½ Σ K_i ω_i, which is ρ⁺/u."""
        grid = self.K[0].grid
        total = KFormField.zeros(grid, 2)
        for index in FRAME_INDICES:
            omega = KFormField.constant(grid, STANDARD_FRAME.form(index))
            total = total + omega.scaled(self.function(index).values)
        return total * 0.5


def k_triple(rho: KFormField, ctx: RhoContext | None = None) -> KTriple:
    """The functions K_i of ρ."""
    ctx = context_of(rho, ctx)
    functions = tuple(
        KFormField.scalar(
            rho.grid, wedge_scalar(rho, STANDARD_FRAME.form(index)) / ctx.u
        )
        for index in FRAME_INDICES
    )
    return KTriple(functions)  # type: ignore[arg-type]


@dataclass(frozen=True)
class InjectivityReport:
    """Outcome of a random search for two fields with the same K.

    Attributes:
        samples (int): Pairs tried.
        min_ratio (float): Smallest ‖K(ρ_a) − K(ρ_b)‖ / ‖ρ_a − ρ_b‖ seen.
        counterexamples (int): Pairs with distinct ρ but K closer than the threshold.
    """

    samples: int
    min_ratio: float
    counterexamples: int


def kmap_injectivity_search(
    rng: np.random.Generator,
    base: KFormField,
    samples: int = 16,
    amplitude: float = 0.05,
    max_mode: int = 1,
    threshold: float = 1e-6,
) -> InjectivityReport:
    """Compare K on random pairs in the class of ``base``.

    A counterexample is a pair at L² distance above 1e-6 whose images are
    closer than ``threshold``.
    """
    ratios = []
    counterexamples = 0
    for _ in range(samples):
        first = base + random_exact(rng, base.grid, max_mode) * amplitude
        second = base + random_exact(rng, base.grid, max_mode) * amplitude
        try:
            image_distance = l2_norm(kmap(first) - kmap(second))
        except DonflowError:
            logger.debug("Skipping a degenerate sample")
            continue
        distance = l2_norm(first - second)
        if distance <= 1e-6:
            continue
        ratios.append(image_distance / distance)
        if image_distance < threshold:
            counterexamples += 1
    return InjectivityReport(
        samples=len(ratios),
        min_ratio=min(ratios) if ratios else float("nan"),
        counterexamples=counterexamples,
    )


def linearization_lower_bound(
    rho: KFormField,
    rng: np.random.Generator,
    directions: int = 8,
    max_mode: int = 2,
    ctx: RhoContext | None = None,
) -> float:
    """Estimate the smallest singular value of K̂ on exact fields.

    Samples the normal operator K̂*K̂ with random exact directions and returns
    the square root of the smallest Rayleigh quotient seen, an upper estimate
    of the true bound.
    """
    ctx = context_of(rho, ctx)
    grid: GridSpec = rho.grid
    quotients = []
    for _ in range(directions):
        direction = random_exact(rng, grid, max_mode)
        image = kmap_linearized(rho, direction, ctx)
        quotients.append(l2_inner(image, image) / l2_inner(direction, direction))
    return float(np.sqrt(min(quotients)))
