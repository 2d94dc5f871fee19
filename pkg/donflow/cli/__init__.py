"""Command-line entry points and the artifacts they write."""
from .checks import REGISTRY, CheckLevel, CheckResult, InvariantCheck, run_checks
from .commands import (
    EXIT_CONFIG,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_RUNTIME,
    cmd_check,
    cmd_compare,
    cmd_run,
)
from .initial import generate_initial
from .main import main
from .plots import line_chart

__all__ = [
    "CheckLevel",
    "CheckResult",
    "EXIT_CONFIG",
    "EXIT_INVARIANT",
    "EXIT_OK",
    "EXIT_RUNTIME",
    "InvariantCheck",
    "REGISTRY",
    "cmd_check",
    "cmd_compare",
    "cmd_run",
    "generate_initial",
    "line_chart",
    "main",
    "run_checks",
]
