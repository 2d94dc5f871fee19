"""Parser for configuration sections backed by dataclasses"""
from __future__ import annotations
import dataclasses
from typing import Any, ClassVar, Protocol, TYPE_CHECKING, Type, get_type_hints

from docstring_parser import parse

from ..exceptions import (
    ConfigError,
    ConfigValueError,
    DonflowError,
    MissingKeyError,
    UnknownKeyError,
)
from .parser import ValueParser

if TYPE_CHECKING:
    from ..json_type import JsonType
    from typing_extensions import TypeGuard
    from .parser import RawValue


class IsDataclass(Protocol):  # pylint: disable=too-few-public-methods
    """A protocol for checking if a class is a dataclass"""

    __dataclass_fields__: ClassVar[dict]


def join_key(prefix: str, name: str) -> str:
    """The dotted key of ``name`` inside the section ``prefix``"""
    return f"{prefix}.{name}" if prefix else name


class DataclassParser(ValueParser[IsDataclass]):
    """Parser for dataclass sections"""

    @property
    def types(self) -> dict[str, Any]:
        """Resolved field annotations"""
        return get_type_hints(self.argtype)

    @property
    def required_fields(self) -> list[str]:
        """All fields without a default

        Returns:
            list[str]: The required fields of the dataclass
        """
        return [
            field.name
            for field in dataclasses.fields(self.argtype)
            if field.default is dataclasses.MISSING
            and field.default_factory is dataclasses.MISSING
        ]

    @property
    def descriptions(self) -> dict[str, str]:
        """Field descriptions from the ``Attributes:`` section of the docstring"""
        return {
            param.arg_name: param.description or ""
            for param in parse(self.argtype.__doc__ or "").params
        }

    @property
    def fields(self) -> dict[str, JsonType]:
        """All fields of the dataclass, with their schemas

        Returns:
            dict[str, JsonType]: The fields of the dataclass
        """
        types = self.types
        return {
            field.name: self.parse_rec(types[field.name]).schema
            for field in dataclasses.fields(self.argtype)
        }

    @property
    def schema(self) -> dict[str, JsonType]:
        return {
            "type": "object",
            "description": parse(self.argtype.__doc__ or "").short_description,
            "properties": self.fields,
            "required": self.required_fields,  # type: ignore
        }

    @classmethod
    def can_parse(cls, argtype: Any) -> TypeGuard[Type[IsDataclass]]:
        return dataclasses.is_dataclass(argtype)

    def parse_value(self, value: RawValue, key: str) -> IsDataclass:
        if not isinstance(value, dict):
            raise ConfigValueError(key, value, "a section of dotted keys")
        types = self.types
        for name in value:
            if name not in types:
                raise UnknownKeyError(join_key(key, name))
        for name in self.required_fields:
            if name in value:
                continue
            nested = self.parse_rec(types[name])
            if isinstance(nested, DataclassParser):
                # report the first missing leaf rather than the section
                nested.parse_value({}, join_key(key, name))
            raise MissingKeyError(join_key(key, name))
        arguments = {
            field.name: self.parse_rec(types[field.name]).parse_value(
                value[field.name], join_key(key, field.name)
            )
            for field in dataclasses.fields(self.argtype)
            if field.name in value
        }
        try:
            return self.argtype(**arguments)
        except ConfigError:
            raise
        except DonflowError as error:
            # name the field when the error carries exactly one of them
            culprits = [name for name in value if hasattr(error, name)]
            if len(culprits) == 1:
                name = culprits[0]
                raise ConfigValueError(join_key(key, name), value[name], str(error)) from error
            raise ConfigValueError(key, value, str(error)) from error
