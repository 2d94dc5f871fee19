"""The DONF snapshot format.

Layout, all little-endian::

    offset  size  content
    0       4     magic b"DONF"
    4       4     u32 version (1)
    8       4     u32 n, points per axis
    12      4     u32 form degree
    16      4     u32 component count
    20      ...   float64 data, component-major, x₁ fastest within a component
"""
from __future__ import annotations
import os
from pathlib import Path
import struct

import numpy as np

from ..algebra.tables import RANKS
from ..atomic import write_atomic
from ..exceptions import InvalidGridError, SnapshotFormatError
from .fields import KFormField
from .spec import GridSpec, Scheme

MAGIC = b"DONF"
VERSION = 1
HEADER = struct.Struct("<4sIIII")
DTYPE = np.dtype("<f8")


def encode_snapshot(field: KFormField) -> bytes:
    """Serialize a field."""
    header = HEADER.pack(
        MAGIC, VERSION, field.grid.n, field.degree, RANKS[field.degree]
    )
    body = b"".join(
        np.ascontiguousarray(component.ravel(order="F"), dtype=DTYPE).tobytes()
        for component in field.coefficients
    )
    return header + body


def decode_snapshot(data: bytes, scheme: Scheme = Scheme.SPECTRAL) -> KFormField:
    """Parse a field written by :func:`encode_snapshot`.

    Args:
        data (bytes): The file contents.
        scheme (Scheme): Differentiation scheme of the returned field's grid;
            the format does not record it.

    Returns:
        KFormField: The field.

    Raises:
        SnapshotFormatError: On a bad header or a size mismatch.
    """
    if len(data) < HEADER.size:
        raise SnapshotFormatError(f"{len(data)} bytes is shorter than the header")
    magic, version, n, degree, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise SnapshotFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported version {version}")
    if degree > 4 or count != RANKS[degree]:
        raise SnapshotFormatError(f"degree {degree} with {count} components")
    try:
        grid = GridSpec(n, scheme)
    except InvalidGridError as error:
        raise SnapshotFormatError(str(error)) from error
    expected = HEADER.size + count * grid.points * DTYPE.itemsize
    if len(data) != expected:
        raise SnapshotFormatError(f"expected {expected} bytes, found {len(data)}")
    flat = np.frombuffer(data, dtype=DTYPE, offset=HEADER.size).astype(float)
    components = [
        chunk.reshape(grid.shape, order="F") for chunk in flat.reshape(count, grid.points)
    ]
    return KFormField(degree, np.stack(components), grid)


def write_snapshot(path: str | os.PathLike[str], field: KFormField) -> Path:
    """Write atomically: a temporary file in the same directory, then a rename."""
    return write_atomic(path, encode_snapshot(field))


def read_snapshot(
    path: str | os.PathLike[str], scheme: Scheme = Scheme.SPECTRAL
) -> KFormField:
    """Read a snapshot file."""
    return decode_snapshot(Path(path).read_bytes(), scheme)
