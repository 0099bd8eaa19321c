"""Reader for the simulator's CSV contract.

Files consist of a block of '# key=value' metadata lines, one header row,
and comma-separated records.  This module is the only knowledge of the
producer that the figure scripts have.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SchemaError(ValueError):
    """The CSV does not provide the columns a figure needs."""


@dataclass
class Table:
    metadata: dict
    columns: list
    rows: list  # list of dicts, values are raw strings

    def require(self, *names):
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise SchemaError(
                f"missing columns {missing}; expected at least "
                f"{list(names)}, found {self.columns}")

    def floats(self, name) -> np.ndarray:
        self.require(name)
        return np.array([float(r[name]) if r[name] != "" else np.nan
                         for r in self.rows])

    def strings(self, name) -> list:
        self.require(name)
        return [r[name] for r in self.rows]


def read_table(path) -> Table:
    metadata, columns, rows = {}, None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# "):
                key, _, value = line[2:].partition("=")
                metadata[key] = value
                continue
            if columns is None:
                columns = line.split(",")
                continue
            rows.append(dict(zip(columns, line.split(","))))
    if columns is None or not rows:
        raise SchemaError(f"{path}: no header row or no records")
    return Table(metadata=metadata, columns=columns, rows=rows)


def grid_values(table: Table, x: str, y: str):
    """Sorted unique axis values of a rectangular scan."""
    xs = np.unique(table.floats(x))
    ys = np.unique(table.floats(y))
    return xs, ys


def grid_matrix(table: Table, x: str, y: str, value: str,
                categorical=False):
    """Pivot a scan CSV into a (len(xs), len(ys)) matrix.

    Missing entries become NaN (or '' for categorical values).  Points
    that appear several times (branch-resolved scans) keep the last
    occurrence.
    """
    xs, ys = grid_values(table, x, y)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    if categorical:
        mat = np.full((len(xs), len(ys)), "", dtype=object)
    else:
        mat = np.full((len(xs), len(ys)), np.nan)
    col_x, col_y = table.floats(x), table.floats(y)
    vals = (table.strings(value) if categorical else table.floats(value))
    for k in range(len(table.rows)):
        mat[xi[col_x[k]], yi[col_y[k]]] = vals[k]
    return xs, ys, mat
