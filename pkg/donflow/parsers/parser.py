"""A protocol for a parser of one configuration value type."""
from __future__ import annotations
from typing import Any, TYPE_CHECKING, Type, TypeVar, Union

from typing_extensions import Protocol

from ..exceptions import CannotParseTypeError

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard

T = TypeVar("T")
S = TypeVar("S")

# a leaf is the text right of "=", a section is a mapping of its keys
RawValue = Union[str, "dict[str, RawValue]"]


class ValueParser(Protocol[T]):
    """A parser for a specific configuration field type

    Both describes the accepted values as a JSON-schema-like dict and turns the
    raw text of a ``key = value`` line into a typed value
    """

    argtype: Type[T]
    rec_parsers: list[Type[ValueParser]]

    def __init__(self, argtype: Type[T], rec_parsers: list[Type[ValueParser]]) -> None:
        self.argtype = argtype
        self.rec_parsers = rec_parsers

    @property
    def schema(self) -> dict[str, JsonType]:
        """The accepted values of this type"""
        ...  # pylint: disable=unnecessary-ellipsis

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[T]]:
        """Whether this parser can parse a specific field type

        Args:
            argtype (Any): The type to check
        """
        ...  # pylint: disable=unnecessary-ellipsis

    def parse_rec(self, argtype: Type[S]) -> ValueParser[S]:
        """Find the parser of a nested type

        Args:
            argtype (Type[S]): The type to parse

        Returns:
            ValueParser[S]: The parser for the type

        Raises:
            CannotParseTypeError: If no registered parser handles the type
        """
        for parser in self.rec_parsers:
            if parser.can_parse(argtype):
                return parser(argtype, self.rec_parsers)
        raise CannotParseTypeError(argtype)

    def parse_value(self, value: RawValue, key: str) -> T:
        """Parse the raw value found at a dotted key

        Args:
            value (RawValue): The raw text, or a section mapping
            key (str): Dotted key of the value, used in error reports

        Raises:
            ConfigValueError: If the value does not match the schema
        """
        ...  # pylint: disable=unnecessary-ellipsis
