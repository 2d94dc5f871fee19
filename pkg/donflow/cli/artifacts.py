"""Atomic writes of the text artifacts in the output directory."""
from __future__ import annotations
import json
import os
from pathlib import Path
from typing import Any

from ..atomic import write_atomic
from ..exceptions import ConfigError, DonflowError
from ..grid.sampling import GENERATOR_NAME
from ..json_type import JsonObject, to_json

REPORT_NAME = "report.json"
CONSISTENCY_NAME = "consistency.json"
ERROR_NAME = "error.json"
DIAGNOSTICS_NAME = "diagnostics.csv"
SNAPSHOT_DIRECTORY = "snapshots"


def snapshot_name(step: int) -> str:
    """``rho_<step:08d>.donf``"""
    return f"rho_{step:08d}.donf"


def write_text(path: str | os.PathLike[str], text: str) -> Path:
    return write_atomic(path, text)


def dumps(payload: Any) -> str:
    """Indented JSON with sorted keys, non-finite numbers written as null."""
    return json.dumps(to_json(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path: str | os.PathLike[str], payload: Any) -> Path:
    return write_text(path, dumps(payload))


def stamped(payload: dict[str, Any], seed: int | None) -> JsonObject:
    """The payload with the seed and generator name every artifact carries."""
    return to_json({**payload, "seed": seed, "generator": GENERATOR_NAME})  # type: ignore[return-value]


def error_payload(error: DonflowError, seed: int | None = None) -> JsonObject:
    """``{"error", "message", "key"}`` for any donflow error."""
    key = error.key if isinstance(error, ConfigError) else None
    return stamped(
        {"error": type(error).__name__, "message": str(error), "key": key}, seed
    )
