"""Fields of differential forms on the periodic lattice (ℝ/2πℤ)⁴."""
from .calculus import (
    codifferential,
    d,
    derivative_symbol,
    gradient,
    inverse_laplacian,
    laplacian,
    partial,
    resolvent,
    spectral_radius,
)
from .fields import KFormField
from .hodge import EXACTNESS_TOLERANCE, HodgeParts, hodge_project, require_exact
from .inner import (
    Gauge,
    donaldson_inner,
    l2_inner,
    l2_norm,
    minimal_potential,
    relative_defect,
    rho_pairing,
)
from .snapshot import decode_snapshot, encode_snapshot, read_snapshot, write_snapshot
from .sampling import GENERATOR_NAME, band_limited, make_rng, random_exact
from .sobolev import product_rule_constant, sobolev_norm
from .solve import solve_spd
from .spec import PERIOD, GridSpec, Scheme

__all__ = [
    "EXACTNESS_TOLERANCE",
    "GENERATOR_NAME",
    "Gauge",
    "GridSpec",
    "HodgeParts",
    "KFormField",
    "PERIOD",
    "Scheme",
    "band_limited",
    "codifferential",
    "d",
    "decode_snapshot",
    "derivative_symbol",
    "donaldson_inner",
    "encode_snapshot",
    "gradient",
    "hodge_project",
    "inverse_laplacian",
    "l2_inner",
    "l2_norm",
    "make_rng",
    "laplacian",
    "minimal_potential",
    "partial",
    "product_rule_constant",
    "random_exact",
    "read_snapshot",
    "relative_defect",
    "resolvent",
    "rho_pairing",
    "sobolev_norm",
    "solve_spd",
    "spectral_radius",
    "write_snapshot",
]
