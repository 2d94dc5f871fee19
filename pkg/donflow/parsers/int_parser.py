"""Parser for int types"""
from .atomic_type_parser import AtomicParser


class IntParser(AtomicParser[int]):
    """Parser for int types"""

    _type = int
    schema_type_name: str = "integer"

    def convert(self, text: str) -> int:
        # int() would also accept "1_000" and surrounding whitespace; keep to plain digits
        if not text.lstrip("+-").isdigit():
            raise ValueError(text)
        return int(text)
