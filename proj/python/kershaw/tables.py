"""Reader for the CSV tables written by the CLI (the plotting interface).

Each file starts with ``# config: <kind>; <settings>`` and ``# <columns>``.
Empty cells mark values that do not exist (e.g. non-realizable surface
points) and are read as ``None``.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

SCHEMAS = {
    "errors": ["model", "N", "L1", "Linf"],
    "diagnostics": ["t", "mass", "min_slack"],
    "surface": ["phi1", "phi2", "phi3", "lambda1", "lambda2", "lambda3"],
    # Followed by u0..uN.
    "profile": ["t", "z"],
}

_TEXT_COLUMNS = {"model"}
_HEADER = re.compile(r"^# config: (\w+); ?(.*)$")


@dataclass
class Table:
    kind: str
    meta: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def _check_schema(kind: str, columns: list[str]) -> None:
    if kind not in SCHEMAS:
        raise ValueError(f"unknown table kind {kind!r}")
    expected = SCHEMAS[kind]
    if kind == "profile":
        moments = [f"u{j}" for j in range(len(columns) - 2)]
        ok = columns[:2] == expected and len(moments) >= 2 and columns[2:] == moments
    else:
        ok = columns == expected
    if not ok:
        raise ValueError(f"{kind} table has columns {columns}")


def read_table(path: str | Path) -> Table:
    with open(path, newline="") as f:
        lines = f.read().splitlines()
    if len(lines) < 2:
        raise ValueError(f"{path}: missing header lines")
    m = _HEADER.match(lines[0])
    if not m or not lines[1].startswith("# "):
        raise ValueError(f"{path}: malformed header")
    kind, meta = m.group(1), m.group(2)
    columns = lines[1][2:].split(",")
    _check_schema(kind, columns)
    table = Table(kind, meta, columns)
    for n, row in enumerate(csv.reader(lines[2:]), start=3):
        if len(row) != len(columns):
            raise ValueError(f"{path}:{n}: expected {len(columns)} cells, got {len(row)}")
        table.rows.append(
            [c if name in _TEXT_COLUMNS else (float(c) if c else None) for name, c in zip(columns, row)]
        )
    return table
