"""Sweep tables and their CSV form.

Cells are written with 12 significant digits so a re-parsed table matches
the in-memory one to better than 1e-9 per cell while staying deterministic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

__all__ = ["SweepTable", "format_cell"]

_CELL_FMT = "{:.12g}"


def format_cell(value: float) -> str:
    return _CELL_FMT.format(float(value))


@dataclass
class SweepTable:
    """Ordered rows of named numeric columns."""

    columns: tuple
    rows: list = field(default_factory=list)

    def __post_init__(self):
        self.columns = tuple(str(c) for c in self.columns)
        self.rows = [tuple(float(v) for v in row) for row in self.rows]
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match column count")

    def append(self, row) -> None:
        row = tuple(float(v) for v in row)
        if len(row) != len(self.columns):
            raise ValueError("row width does not match column count")
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise KeyError(f"no column named {name!r}") from None
        return np.array([row[idx] for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            f.write(self.to_csv())

    @classmethod
    def read_csv(cls, path) -> "SweepTable":
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader)
            rows = [tuple(float(v) for v in row) for row in reader if row]
        return cls(tuple(header), rows)
