"""Exact linear algebra on the exterior powers of an oriented Euclidean ℝ⁴."""
from .chords import ConstraintSample, negative_chords_defect, sample_constraint_pairs
from .forms import (
    KForm,
    basis_form,
    inner,
    monomial,
    norm_squared,
    sd_split,
    self_dual_part,
    star,
    top_coefficient,
    two_form_evaluate,
    two_form_matrix,
    volume_form,
    wedge,
    wedge_scalar,
)
from .frame import ANTI_SELF_DUAL_FRAME, CYCLIC, FRAME_INDICES, STANDARD_FRAME, FrameTriple
from .rho import (
    DEFAULT_EPS_DEG,
    J_rho,
    J_rho_from_star,
    R_rho,
    RhoContext,
    apply_matrix,
    compose_covector,
    contract,
    hamiltonian_vector,
    make_context,
    omega_rho,
    pairing_matrix,
    star_rho,
    star_rho_derivative,
    theta_derivative,
    theta_rho,
    theta_selfdual,
)

__all__ = [
    "ANTI_SELF_DUAL_FRAME",
    "CYCLIC",
    "ConstraintSample",
    "DEFAULT_EPS_DEG",
    "FRAME_INDICES",
    "FrameTriple",
    "J_rho",
    "J_rho_from_star",
    "KForm",
    "R_rho",
    "RhoContext",
    "STANDARD_FRAME",
    "apply_matrix",
    "basis_form",
    "compose_covector",
    "contract",
    "hamiltonian_vector",
    "inner",
    "make_context",
    "monomial",
    "negative_chords_defect",
    "norm_squared",
    "omega_rho",
    "pairing_matrix",
    "sample_constraint_pairs",
    "sd_split",
    "self_dual_part",
    "star",
    "star_rho",
    "star_rho_derivative",
    "theta_derivative",
    "theta_rho",
    "theta_selfdual",
    "top_coefficient",
    "two_form_evaluate",
    "two_form_matrix",
    "volume_form",
    "wedge",
    "wedge_scalar",
]
