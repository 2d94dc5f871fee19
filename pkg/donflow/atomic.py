"""Atomic file writes: a temporary file in the target directory, then a rename."""
from __future__ import annotations
import logging
import os
from pathlib import Path
import tempfile

logger = logging.getLogger(__name__)


def write_atomic(path: str | os.PathLike[str], data: str | bytes) -> Path:
    """Write ``data`` to ``path`` so readers see the old file or the new one.

    Text is encoded as UTF-8. The temporary file is removed if anything fails.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temporary = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    payload = data.encode("utf-8") if isinstance(data, str) else data
    try:
        with os.fdopen(descriptor, "wb") as handle:
            handle.write(payload)
        os.replace(temporary, target)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise
    logger.debug("Wrote %s", target)
    return target
