"""Plain-text column tables: ``#`` comments, whitespace or comma delimiters."""

from __future__ import annotations

import re
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .exceptions import InvalidInputError

__all__ = ["TableError", "read_table", "write_table", "format_value"]

_SPLIT = re.compile(r"[,\s]+")


class TableError(InvalidInputError):
    """Malformed or unreadable table."""


def format_value(v) -> str:
    return f"{float(v):.17g}"


def read_table(path, *, header: bool = False, min_columns: int = 1):
    """Read a numeric table.

    With ``header=True`` the first non-comment row holds column names.
    Returns ``(names, data)`` where ``data`` has one column per field and
    ``names`` is ``None`` when there is no header.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TableError(f"cannot read {path}: {exc.strerror or exc}") from exc
    names = None
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        if header and names is None:
            names = fields
            width = len(fields)
            continue
        try:
            values = [float(f) for f in fields]
        except ValueError:
            raise TableError(f"{path}:{lineno}: non-numeric field in {raw!r}") from None
        if width is None:
            width = len(values)
        if len(values) != width:
            raise TableError(
                f"{path}:{lineno}: expected {width} columns, found {len(values)}"
            )
        rows.append(values)
    if not rows:
        raise TableError(f"{path}: no data rows")
    if width < min_columns:
        raise TableError(f"{path}: need at least {min_columns} columns, found {width}")
    return names, np.array(rows, dtype=float)


@contextmanager
def _sink(path):
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def write_table(path, names, columns, config: dict | None = None, summary=()):
    """Write columns in ``%.17g`` with the configuration echoed as comments."""
    cols = [np.asarray(c, dtype=float).ravel() for c in columns]
    with _sink(path) as fh:
        for key, value in (config or {}).items():
            fh.write(f"# {key} = {value}\n")
        for line in summary:
            fh.write(f"# {line}\n")
        fh.write("# " + " ".join(names) + "\n")
        for row in zip(*cols):
            fh.write(" ".join(format_value(v) for v in row) + "\n")
