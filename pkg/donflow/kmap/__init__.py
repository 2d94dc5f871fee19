"""The K-map, the operators S^ρ and the reduced hyperKähler evolution."""
from ..flow.operators import codifferential_rho
from .kmap import (
    InjectivityReport,
    KTriple,
    k_triple,
    kmap,
    kmap_injectivity_search,
    kmap_linearized,
    kmap_linearized_adjoint,
    linearization_lower_bound,
)
from .newton import KInverter, NewtonResult, newton_invert_k
from .reduced import (
    ROUTES,
    ConsistencyReport,
    ReducedVariant,
    evolution_routes,
    reduced_consistency,
    reduced_rhs,
)
from .soperator import (
    directional_derivative,
    gradient_pairing,
    poisson_bracket,
    s_rho,
    s_rho_adjoint,
    s_rho_adjoint_selfdual,
)

__all__ = [
    "ConsistencyReport",
    "InjectivityReport",
    "KInverter",
    "KTriple",
    "NewtonResult",
    "ROUTES",
    "ReducedVariant",
    "codifferential_rho",
    "directional_derivative",
    "evolution_routes",
    "gradient_pairing",
    "k_triple",
    "kmap",
    "kmap_injectivity_search",
    "kmap_linearized",
    "kmap_linearized_adjoint",
    "linearization_lower_bound",
    "newton_invert_k",
    "poisson_bracket",
    "reduced_consistency",
    "reduced_rhs",
    "s_rho",
    "s_rho_adjoint",
    "s_rho_adjoint_selfdual",
]
