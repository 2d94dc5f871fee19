"""The evolution of K = ρ⁺/u under the flow, computed along independent routes."""
from __future__ import annotations
from dataclasses import dataclass, field
import enum
from itertools import combinations
import logging
from typing import Any

import numpy as np

from ..algebra.forms import two_form_evaluate
from ..algebra.frame import CYCLIC, FRAME_INDICES, STANDARD_FRAME
from ..algebra.rho import R_rho, RhoContext, hamiltonian_vector, star_rho
from ..flow.operators import context_of, flow_potential, flow_rhs
from ..grid.calculus import d
from ..grid.fields import KFormField
from ..grid.inner import relative_defect
from ..grid.sampling import GENERATOR_NAME
from .kmap import KTriple, k_triple, kmap_linearized
from .soperator import directional_derivative, poisson_bracket, s_rho, s_rho_adjoint

logger = logging.getLogger(__name__)


class ReducedVariant(enum.Enum):
    """Forms of the reduced equations for ∂K_i/∂t.

    ``DERIVED`` is −(1/u)d^{*ρ}dK_i − 2{K_j, K_k}_ρ + ρ(X_{K_i}, Σ_ℓ J_ℓ X_{K_ℓ}),
    which holds with {f, g}_ρ dvol_ρ = df∧dg∧ρ. ``STATEMENT`` flips the sign
    of the bracket term, and ``PROOF`` additionally replaces Σ_ℓ J_ℓ X_{K_ℓ}
    by Σ_j J_j X_{K_i}.
    """

    DERIVED = "derived"
    STATEMENT = "statement"
    PROOF = "proof"


ROUTES = ("chain_rule", "closed_form", "reduced", "s_operator")


def _hamiltonian_vectors(ctx: RhoContext, triple: KTriple) -> list[np.ndarray]:
    return [hamiltonian_vector(ctx, d(triple.function(i))) for i in FRAME_INDICES]  # type: ignore[arg-type]


def _apply_background(index: int, vector: np.ndarray) -> np.ndarray:
    return np.einsum("ab,b...->a...", STANDARD_FRAME.complex_structure(index), vector)


def reduced_rhs(
    rho: KFormField,
    variant: ReducedVariant = ReducedVariant.DERIVED,
    ctx: RhoContext | None = None,
) -> KTriple:
    """∂K_i/∂t for i = 1, 2, 3 from the reduced hyperKähler equations.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    ctx = context_of(rho, ctx)
    triple = k_triple(rho, ctx)
    vectors = _hamiltonian_vectors(ctx, triple)
    bracket_sign = -2.0 if variant is ReducedVariant.DERIVED else 2.0
    rates = []
    for i, j, k in CYCLIC:
        function = triple.function(i)
        # −d^{*ρ}d f is the top coefficient of d *^ρ d f
        diffusion = d(star_rho(ctx, d(function))).values / ctx.u  # type: ignore[arg-type]
        bracket = poisson_bracket(rho, triple.function(j), triple.function(k), ctx).values
        own = vectors[i - 1]
        if variant is ReducedVariant.PROOF:
            partner = sum(_apply_background(index, own) for index in FRAME_INDICES)
        else:
            partner = sum(
                _apply_background(index, vectors[index - 1]) for index in FRAME_INDICES
            )
        coupling = two_form_evaluate(rho, own, partner)  # type: ignore[arg-type]
        rates.append(KFormField.scalar(rho.grid, diffusion + bracket_sign * bracket + coupling))
    return KTriple(tuple(rates))  # type: ignore[arg-type]


@dataclass(frozen=True)
class ConsistencyReport:
    """Pairwise relative L² defects between the routes to ∂(ρ⁺/u)/∂t.

    Attributes:
        route_pairs (list[tuple[str, str]]): Compared routes.
        rel_defect (list[float]): Defect of each pair.
        variant_defects (dict[str, float]): Defect of each reduced variant
            against the chain-rule route.
        bracket_variant (str): The variant with the smallest defect.
        grid_n (int): Points per axis.
        scheme (str): Differentiation scheme.
        seed (int | None): Seed of the field, if it was sampled.
    """

    route_pairs: list[tuple[str, str]]
    rel_defect: list[float]
    variant_defects: dict[str, float]
    bracket_variant: str
    grid_n: int
    scheme: str
    seed: int | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def max_defect(self) -> float:
        return max(self.rel_defect)

    def defect(self, first: str, second: str) -> float:
        """Defect between two named routes."""
        for pair, value in zip(self.route_pairs, self.rel_defect):
            if set(pair) == {first, second}:
                return value
        raise KeyError((first, second))

    def to_json(self) -> dict[str, Any]:
        """The serializable form written to consistency.json."""
        return {
            "route_pairs": [list(pair) for pair in self.route_pairs],
            "rel_defect": self.rel_defect,
            "variant_defects": self.variant_defects,
            "bracket_variant": self.bracket_variant,
            "grid_n": self.grid_n,
            "scheme": self.scheme,
            "seed": self.seed,
            "generator": GENERATOR_NAME,
            **self.extra,
        }


def evolution_routes(
    rho: KFormField,
    variant: ReducedVariant = ReducedVariant.DERIVED,
    ctx: RhoContext | None = None,
) -> dict[str, KFormField]:
    """∂(ρ⁺/u)/∂t computed four ways.

    chain_rule: K̂ applied to the flow vector field.
    closed_form: (1/u) R^ρ d^{+ρ}(*^ρ dΘ^ρ).
    reduced: ½ Σ (∂K_i/∂t) ω_i from :func:`reduced_rhs`.
    s_operator: −(2/u) S^ρ(S^ρ)^{*ρ}η + ∇_{X_μ}η with μ = *^ρ dΘ^ρ.
    """
    ctx = context_of(rho, ctx)
    potential = flow_potential(rho, ctx)
    derivative = d(potential)
    closed_form = R_rho(ctx, (derivative + star_rho(ctx, derivative)) * 0.5) / ctx.u
    eta = ctx.eta
    inner_term = s_rho(rho, s_rho_adjoint(rho, eta, ctx), ctx)  # type: ignore[arg-type]
    transport = directional_derivative(eta, hamiltonian_vector(ctx, potential))  # type: ignore[arg-type]
    return {
        "chain_rule": kmap_linearized(rho, flow_rhs(rho, ctx), ctx),
        "closed_form": closed_form,  # type: ignore[dict-item]
        "reduced": reduced_rhs(rho, variant, ctx).recombine(),
        "s_operator": inner_term * (-2.0 / ctx.u) + transport,
    }


def reduced_consistency(
    rho: KFormField,
    variant: ReducedVariant = ReducedVariant.DERIVED,
    seed: int | None = None,
    ctx: RhoContext | None = None,
) -> ConsistencyReport:
    """Compare every pair of routes and every reduced variant.

    The ``reduced`` route uses ``variant``; the variant table compares all
    of them with the chain-rule route.

    Raises:
        NondegeneracyError: If u ≤ ε_deg somewhere.
    """
    ctx = context_of(rho, ctx)
    routes = evolution_routes(rho, variant, ctx)
    pairs = list(combinations(ROUTES, 2))
    defects = [relative_defect(routes[a], routes[b]) for a, b in pairs]
    variant_defects = {
        option.value: relative_defect(
            reduced_rhs(rho, option, ctx).recombine(), routes["chain_rule"]
        )
        for option in ReducedVariant
    }
    adjudicated = min(variant_defects, key=variant_defects.__getitem__)
    logger.info(
        "Consistency on n=%d: max pairwise defect %.3g, best variant %s",
        rho.grid.n,
        max(defects),
        adjudicated,
    )
    return ConsistencyReport(
        route_pairs=pairs,
        rel_defect=defects,
        variant_defects=variant_defects,
        bracket_variant=adjudicated,
        grid_n=rho.grid.n,
        scheme=rho.grid.scheme.value,
        seed=seed,
    )
