"""Parser for string types"""
from .atomic_type_parser import AtomicParser


class StringParser(AtomicParser[str]):
    """Parser for bare strings; the value is taken verbatim after stripping"""

    _type = str
    schema_type_name: str = "string"

    def convert(self, text: str) -> str:
        if not text:
            raise ValueError(text)
        return text
