"""Reading and writing data tables in CSV and Octave text formats."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DataError


@dataclass
class DataTable:
    names: list[str]
    data: np.ndarray  # (N, d) float64

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    def column(self, key) -> np.ndarray:
        return self.data[:, self._index(key)]

    def _index(self, key) -> int:
        if isinstance(key, int) or (isinstance(key, str) and key.lstrip("-").isdigit()):
            idx = int(key)
            if not 0 <= idx < len(self.names):
                raise DataError(f"column index {idx} out of range (have {len(self.names)} columns)")
            return idx
        if key in self.names:
            return self.names.index(key)
        raise DataError(f"unknown column {key!r}; available: {self.names}")

    def select(self, colspec: str) -> np.ndarray:
        """Columns named by a comma-separated list of names or 0-based indices."""
        keys = [part.strip() for part in colspec.split(",") if part.strip()]
        if not keys:
            raise DataError(f"empty column specification {colspec!r}")
        return np.column_stack([self.column(k) for k in keys])


def _parse_cell(token: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"non-numeric cell {token!r} at {where}") from None
    if math.isnan(value) or math.isinf(value):
        raise DataError(f"non-finite cell {token!r} at {where}")
    return value


def read_csv(path) -> DataTable:
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [row for row in rows if row and not all(cell.strip() == "" for cell in row)]
    if not rows:
        raise DataError(f"{path}: empty file")
    first = rows[0]

    def _is_number(token: str) -> bool:
        try:
            float(token)
            return True
        except ValueError:
            return False

    if all(_is_number(cell) for cell in first):
        names = [f"col{j}" for j in range(len(first))]
        body = rows
        start_line = 1
    else:
        names = [cell.strip() for cell in first]
        if len(set(names)) != len(names):
            raise DataError(f"{path}: duplicate column names {names}")
        body = rows[1:]
        start_line = 2
    if not body:
        raise DataError(f"{path}: no data rows")
    width = len(names)
    data = np.empty((len(body), width))
    for i, row in enumerate(body):
        if len(row) != width:
            raise DataError(
                f"{path}: ragged row at line {start_line + i}: expected {width} cells, "
                f"got {len(row)}")
        for j, cell in enumerate(row):
            data[i, j] = _parse_cell(cell.strip(), f"line {start_line + i}, column {j}")
    return DataTable(names=names, data=data)


def read_octave_text(path) -> DataTable:
    path = Path(path)
    lines = path.read_text().splitlines()
    names: list[str] = []
    columns: list[np.ndarray] = []
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if not line:
            i += 1
            continue
        if not line.startswith("# name:"):
            raise DataError(f"{path}: expected '# name:' header at line {i + 1}, got {line!r}")
        name = line.split(":", 1)[1].strip()
        header = {}
        i += 1
        while i < len(lines) and lines[i].strip().startswith("#"):
            key, _, value = lines[i].strip("# \t").partition(":")
            header[key.strip()] = value.strip()
            i += 1
        if header.get("type") != "matrix":
            raise DataError(f"{path}: unknown type tag {header.get('type')!r} for {name!r}")
        try:
            n_rows = int(header["rows"])
            n_cols = int(header["columns"])
        except (KeyError, ValueError):
            raise DataError(f"{path}: matrix {name!r} lacks valid rows/columns headers") from None
        block = np.empty((n_rows, n_cols))
        for r in range(n_rows):
            if i >= len(lines):
                raise DataError(f"{path}: matrix {name!r} truncated at line {i + 1}")
            cells = lines[i].split()
            if len(cells) != n_cols:
                raise DataError(
                    f"{path}: ragged row at line {i + 1}: expected {n_cols} cells, "
                    f"got {len(cells)}")
            for c, cell in enumerate(cells):
                block[r, c] = _parse_cell(cell, f"line {i + 1}, column {c}")
            i += 1
        if n_cols == 1:
            names.append(name)
            columns.append(block[:, 0])
        else:
            for c in range(n_cols):
                names.append(f"{name}_{c}")
                columns.append(block[:, c])
    if not columns:
        raise DataError(f"{path}: no matrices found")
    heights = {col.shape[0] for col in columns}
    if len(heights) != 1:
        raise DataError(f"{path}: matrices have mismatching row counts {sorted(heights)}")
    return DataTable(names=names, data=np.column_stack(columns))


def read_table(path, format: str = "csv") -> DataTable:
    if format == "csv":
        return read_csv(path)
    if format in ("octave", "octave_text"):
        return read_octave_text(path)
    raise DataError(f"unknown table format {format!r}")


def _render(value: float) -> str:
    """Shortest decimal that round-trips; integral values render as integers."""
    if value == int(value) and abs(value) < 2 ** 53:
        return str(int(value))
    return repr(float(value))


def write_csv(table: DataTable, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.names)
        for row in table.data:
            writer.writerow([_render(v) for v in row])


def write_octave_text(table: DataTable, path) -> None:
    path = Path(path)
    with path.open("w") as fh:
        for j, name in enumerate(table.names):
            fh.write(f"# name: {name}\n# type: matrix\n")
            fh.write(f"# rows: {table.n_rows}\n# columns: 1\n")
            for v in table.data[:, j]:
                fh.write(f"{_render(v)}\n")


def write_table(table: DataTable, path, format: str = "csv") -> None:
    if format == "csv":
        write_csv(table, path)
    elif format in ("octave", "octave_text"):
        write_octave_text(table, path)
    else:
        raise DataError(f"unknown table format {format!r}")
