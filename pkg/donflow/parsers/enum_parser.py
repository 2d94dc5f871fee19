"""Parser for enum types"""
from __future__ import annotations
import enum
from typing import Any, TYPE_CHECKING, Type, TypeVar, get_origin

from ..exceptions import ConfigValueError
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue

T = TypeVar("T", bound=enum.Enum)


class EnumParser(ValueParser[T]):
    """Parser for enum types, matching member values case-insensitively"""

    @property
    def schema(self) -> dict[str, JsonType]:
        schema: dict[str, JsonType] = {
            "type": "string",
            "enum": [str(member.value) for member in self.argtype],
        }
        if self.argtype.__doc__ is not None:
            schema["description"] = self.argtype.__doc__
        return schema

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[T]]:
        # generic aliases such as list[int] pass isinstance(..., type)
        if not isinstance(argtype, type) or get_origin(argtype) is not None:
            return False
        return issubclass(argtype, enum.Enum)

    def parse_value(self, value: RawValue, key: str) -> T:
        if not isinstance(value, str):
            raise ConfigValueError(key, value, self.schema)
        wanted = value.strip().lower()
        for member in self.argtype:
            if wanted in (str(member.value).lower(), member.name.lower()):
                return member
        raise ConfigValueError(key, value, self.schema)
