"""Parser for fixed-length tuple types"""
from __future__ import annotations
from typing import Any, TYPE_CHECKING, Tuple, Type, get_args, get_origin

from ..exceptions import ConfigValueError
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue


class TupleParser(ValueParser[tuple]):
    """Parser for tuples, written as comma-separated items"""

    @property
    def items(self) -> tuple[Any, ...]:
        """The item types"""
        return get_args(self.argtype)

    @property
    def schema(self) -> dict[str, JsonType]:
        return {
            "type": "array",
            "items": [self.parse_rec(item).schema for item in self.items],
            "minItems": len(self.items),
            "maxItems": len(self.items),
        }

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[tuple]]:
        return get_origin(argtype) in [tuple, Tuple] and Ellipsis not in get_args(argtype)

    def parse_value(self, value: RawValue, key: str) -> tuple:
        if not isinstance(value, str):
            raise ConfigValueError(key, value, self.schema)
        parts = value.split(",")
        if len(parts) != len(self.items):
            raise ConfigValueError(key, value, self.schema)
        return tuple(
            self.parse_rec(item).parse_value(part, key)
            for item, part in zip(self.items, parts)
        )
