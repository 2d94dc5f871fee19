"""Parser for null values"""
from __future__ import annotations
from typing import Any, TYPE_CHECKING, Type

from ..exceptions import ConfigValueError
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue


class NoneParser(ValueParser[None]):
    """Parser for ``none``"""

    @property
    def schema(self) -> dict[str, JsonType]:
        return {"type": "null"}

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[None]]:
        return argtype in [None, type(None)]

    def parse_value(self, value: RawValue, key: str) -> None:
        if not isinstance(value, str) or value.strip().lower() != "none":
            raise ConfigValueError(key, value, self.schema)
