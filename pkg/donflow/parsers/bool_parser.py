"""Parser for bool types"""
from .atomic_type_parser import AtomicParser


class BoolParser(AtomicParser[bool]):
    """Parser for bool types, written ``true`` or ``false``"""

    _type = bool
    schema_type_name: str = "boolean"

    def convert(self, text: str) -> bool:
        lowered = text.lower()
        if lowered not in ("true", "false"):
            raise ValueError(text)
        return lowered == "true"
