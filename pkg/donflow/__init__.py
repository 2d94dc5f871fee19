"""A numerical laboratory for the Donaldson flow of symplectic forms on the flat 4-torus."""
from .algebra import STANDARD_FRAME, FrameTriple, KForm, RhoContext, make_context
from .config import (
    InitialConfig,
    InitialKind,
    OutputConfig,
    RunConfig,
    describe_config,
    load_config,
    parse_config_text,
)
from .exceptions import DonflowError
from .flow import FlowConfig, FlowState, Integrator, Schedule, Tolerances, energy, flow_rhs, run
from .grid import GridSpec, KFormField, Scheme
from .kmap import kmap, newton_invert_k, reduced_consistency

__all__ = [
    "DonflowError",
    "FlowConfig",
    "FlowState",
    "FrameTriple",
    "GridSpec",
    "InitialConfig",
    "InitialKind",
    "Integrator",
    "KForm",
    "KFormField",
    "OutputConfig",
    "RhoContext",
    "RunConfig",
    "STANDARD_FRAME",
    "Schedule",
    "Scheme",
    "Tolerances",
    "describe_config",
    "energy",
    "flow_rhs",
    "kmap",
    "load_config",
    "make_context",
    "newton_invert_k",
    "parse_config_text",
    "reduced_consistency",
    "run",
]
