"""Parsers for configuration values"""
from .dataclass_parser import DataclassParser, join_key
from .default import default_parsers
from .parser import RawValue, ValueParser


__all__ = [
    "DataclassParser",
    "RawValue",
    "ValueParser",
    "default_parsers",
    "join_key",
]
