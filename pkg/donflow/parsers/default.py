"""Default parsers for configuration values."""
from __future__ import annotations
from typing import TYPE_CHECKING, Type

from .bool_parser import BoolParser
from .dataclass_parser import DataclassParser
from .enum_parser import EnumParser
from .float_parser import FloatParser
from .int_parser import IntParser
from .none_parser import NoneParser
from .str_parser import StringParser
from .tuple_parser import TupleParser
from .union_parser import UnionParser

if TYPE_CHECKING:
    from .parser import ValueParser


default_parsers: list[Type[ValueParser]] = [
    BoolParser,
    DataclassParser,
    EnumParser,
    FloatParser,
    IntParser,
    NoneParser,
    StringParser,
    TupleParser,
    UnionParser,
]
