import os

import pytest

from donflow.atomic import write_atomic


def test_write_atomic_replaces_the_file(tmp_path):
    path = tmp_path / "nested" / "report.json"
    write_atomic(path, "first")
    assert write_atomic(path, b"second") == path
    assert path.read_text(encoding="utf-8") == "second"
    assert list(path.parent.iterdir()) == [path]


def test_write_atomic_leaves_the_old_file_on_failure(tmp_path, monkeypatch):
    path = tmp_path / "diagnostics.csv"
    write_atomic(path, "old")

    def fail(source, target):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", fail)
    with pytest.raises(OSError):
        write_atomic(path, "new")
    assert path.read_text(encoding="utf-8") == "old"
    assert list(tmp_path.iterdir()) == [path]
