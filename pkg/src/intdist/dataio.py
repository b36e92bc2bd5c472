"""CSV/JSON input and output with a strict, reproducible format.

Numbers are written with 17 significant digits (round-trip exact for double
precision), '.' decimal separator, comma field separator, LF line endings.
Ingestion is zero-tolerance: every malformed row is reported by its physical
1-based row number, and only a single leading header row is forgiven.
"""

from __future__ import annotations

import csv
import json
import math
from typing import Iterable, Sequence

from .errors import DomainError
from .estimation import Dataset

__all__ = ["format_value", "ingest_csv", "write_csv", "write_json"]


def format_value(value) -> str:
    if isinstance(value, bool):
        raise DomainError("booleans have no CSV representation here")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_value(cell) for cell in row])


def write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True))
        fh.write("\n")


def _parse_cell(cell: str) -> float:
    value = float(cell.strip())
    if not math.isfinite(value):
        raise ValueError("non-finite value")
    return value


def ingest_csv(path: str, column: int = 0) -> Dataset:
    """One real per row from the selected 0-based column.

    Row 1 may be a header: it is skipped silently when its cell does not
    parse as a number.  Every other defect (missing column, blank row,
    non-numeric or non-finite cell) is collected and reported with its
    physical row number; any defect at all fails the ingestion.
    """
    if int(column) != column or int(column) < 0:
        raise DomainError(f"column must be a nonnegative integer, got {column!r}")
    column = int(column)
    values: list[float] = []
    defects: list[str] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row_no, row in enumerate(csv.reader(fh), start=1):
            if len(row) <= column:
                if row_no == 1:
                    continue  # a short header line is still a header
                defects.append(f"row {row_no}: no column {column}")
                continue
            try:
                values.append(_parse_cell(row[column]))
            except ValueError:
                if row_no == 1:
                    continue  # header row
                defects.append(f"row {row_no}: not a finite number: {row[column]!r}")
    if defects:
        shown = "; ".join(defects[:10])
        more = f" (and {len(defects) - 10} more)" if len(defects) > 10 else ""
        raise DomainError(f"malformed input in {path}: {shown}{more}")
    if not values:
        raise DomainError(f"no data rows found in {path}")
    return Dataset(values)
