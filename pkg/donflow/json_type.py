"""Type definitions for JSON data, and conversion of report values into them."""
from __future__ import annotations
import enum
import math
from typing import Any

import numpy as np

JsonType = int | float | str | bool | list["JsonType"] | dict[str, "JsonType"] | None
JsonObject = dict[str, JsonType]


def to_json(value: Any) -> JsonType:
    """Convert report values to plain JSON.

    numpy scalars and arrays become Python numbers and lists, tuples become
    lists, enums their values; NaN and infinities become ``null`` since JSON
    has no spelling for them.
    """
    if isinstance(value, enum.Enum):
        return to_json(value.value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, np.ndarray):
        return to_json(value.tolist())
    if isinstance(value, dict):
        return {str(key): to_json(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(item) for item in value]
    if value is None or isinstance(value, str):
        return value
    return str(value)
