"""Parser for float types"""
import math

from .atomic_type_parser import AtomicParser


class FloatParser(AtomicParser[float]):
    """Parser for float types, in Python float syntax"""

    _type = float
    schema_type_name: str = "number"

    def convert(self, text: str) -> float:
        value = float(text)
        if not math.isfinite(value):
            raise ValueError(text)
        return value
