"""Parser for union types"""
from __future__ import annotations
import contextlib
from types import UnionType
from typing import Any, TYPE_CHECKING, Type, Union, get_args, get_origin

from ..exceptions import ConfigValueError
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue


class UnionParser(ValueParser[UnionType]):
    """Parser for union types; the first member that accepts the value wins,
    with ``None`` tried first"""

    @property
    def schema(self) -> dict[str, JsonType]:
        return {"anyOf": [self.parse_rec(t).schema for t in get_args(self.argtype)]}

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[UnionType]]:
        return get_origin(argtype) in (Union, UnionType)

    def parse_value(self, value: RawValue, key: str) -> UnionType:
        # ``none`` must not be swallowed by a string member
        members = sorted(get_args(self.argtype), key=lambda t: t is not type(None))
        for single_type in members:
            with contextlib.suppress(ConfigValueError):
                return self.parse_rec(single_type).parse_value(value, key)
        raise ConfigValueError(key, value, self.schema)
