"""Deterministic text output: floats at 17 significant digits, stable JSON/CSV.

The stdlib json encoder formats floats with shortest-roundtrip repr, whose
digit count varies; batch outputs here are specified to carry a fixed 17
significant digits so reruns are byte-identical and full precision survives.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .errors import CsvFormatError


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def _emit(obj, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{json.dumps(str(k))}: {_emit(v, level + 1, indent)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v, level, indent) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def json_dumps(obj, indent: int = 2) -> str:
    """JSON text with 17-significant-digit floats and stable key order."""
    return _emit(obj, 0, indent) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """CSV with '.' decimals, ',' delimiter, a header row, 17-digit floats."""
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        cells = [
            format_float(cell) if isinstance(cell, float) else str(cell) for cell in row
        ]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def read_xy_csv(path: str):
    """Two-column (x, f(x)) CSV; an optional header row is skipped.

    Raises CsvFormatError with the 1-based line number of the first cell that
    does not parse.
    """
    xs, ys = [], []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise CsvFormatError(lineno, f"expected two columns, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise CsvFormatError(
                    lineno, f"could not parse {row[0]!r}, {row[1]!r} as numbers"
                ) from None
            xs.append(x)
            ys.append(y)
    if not xs:
        raise CsvFormatError(1, "no data rows found")
    return xs, ys
