"""Parser for single-token values"""
from __future__ import annotations
from typing import Any, TYPE_CHECKING, Type, TypeVar

from typing_extensions import Protocol

from ..exceptions import ConfigValueError
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue

T = TypeVar("T")


class AtomicParser(ValueParser[T], Protocol[T]):
    """Parser for values written as one token"""

    _type: Type[T]

    @property
    def schema_type_name(self) -> str:
        """Name of the type in the schema"""
        ...  # pylint: disable=unnecessary-ellipsis

    @property
    def schema(self) -> dict[str, JsonType]:
        return {
            "type": self.schema_type_name,
        }

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[T]]:
        return argtype is cls._type

    def convert(self, text: str) -> T:
        """Turn the stripped token into a value, raising ValueError if it cannot"""
        return self._type(text)  # type: ignore[call-arg]

    def parse_value(self, value: RawValue, key: str) -> T:
        if not isinstance(value, str):
            raise ConfigValueError(key, value, self.schema)
        try:
            return self.convert(value.strip())
        except ValueError as error:
            raise ConfigValueError(key, value, self.schema) from error
