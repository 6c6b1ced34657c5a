"""Built-in datasets on integer nodes and CSV ingestion."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateNodeError,
    MalformedRowError,
    NonUniformNodesError,
    UnknownDatasetError,
)


@dataclass(frozen=True)
class Dataset:
    """Values on the uniform nodes ``0..n`` (curve) or ``0..n x 0..n`` (surface)."""

    name: str
    values: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim not in (1, 2):
            raise ValueError("values must be a vector or a square grid")
        if values.ndim == 2 and values.shape[0] != values.shape[1]:
            raise NonUniformNodesError(f"surface grid must be square, got {values.shape}")
        if values.size == 0:
            raise ValueError("empty dataset")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def is_surface(self) -> bool:
        return self.values.ndim == 2

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1

    @property
    def nodes(self) -> np.ndarray:
        idx = np.arange(self.n + 1)
        if not self.is_surface:
            return idx
        ii, jj = np.meshgrid(idx, idx, indexing="ij")
        return np.column_stack([ii.ravel(), jj.ravel()])

    def rows(self) -> list[tuple[tuple[int, ...], float]]:
        if self.is_surface:
            return [((int(i), int(j)), float(self.values[i, j])) for i, j in self.nodes]
        return [((int(i),), float(v)) for i, v in enumerate(self.values)]


def xi0_curve(x):
    x = np.asarray(x, dtype=np.float64)
    return np.exp(-(x**2)) + 3.0 * np.exp(-((x - 4.0) ** 2)) + 1.7 * np.exp(-((x - 8.0) ** 2))


def xi0_surface(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return np.exp(-(x**2)) + 3.0 * np.exp(-((y - 1.0) ** 2)) + np.exp(-((x - 6.0) ** 2) - (y - 6.0) ** 2)


def builtin_dataset(name: str, n: int = 10) -> Dataset:
    idx = np.arange(n + 1, dtype=np.float64)
    if name == "xi0-curve":
        return Dataset(name, xi0_curve(idx), "f(x) = e^-x^2 + 3e^-(x-4)^2 + 1.7e^-(x-8)^2")
    if name == "xi0-surface":
        ii, jj = np.meshgrid(idx, idx, indexing="ij")
        return Dataset(
            name, xi0_surface(ii, jj), "f(x,y) = e^-x^2 + 3e^-(y-1)^2 + e^-((x-6)^2+(y-6)^2)"
        )
    raise UnknownDatasetError(f"unknown dataset {name!r}; known: xi0-curve, xi0-surface")


BUILTIN_NAMES = ("xi0-curve", "xi0-surface")


def _as_node(token: str) -> int | None:
    try:
        val = float(token)
    except ValueError:
        return None
    if not math.isfinite(val) or val != int(val):
        return None
    return int(val)


def parse_points_csv(path) -> Dataset:
    """Read ``i,value`` or ``i,j,value`` rows into a ``Dataset``.

    A non-numeric first line is taken as a header.  Nodes must cover
    ``0..n`` (or the full square grid) exactly once.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        lines = list(csv.reader(fh))
    records = []
    width = None
    for lineno, row in enumerate(lines, start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        text = ",".join(row)
        if width is None and lineno == 1 and not _numeric_row(cells):
            continue  # header
        if len(cells) not in (2, 3):
            raise MalformedRowError(lineno, text, "expected 2 or 3 columns")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MalformedRowError(lineno, text, f"expected {width} columns")
        node = tuple(_as_node(c) for c in cells[:-1])
        if any(k is None for k in node):
            raise MalformedRowError(lineno, text, "node index must be an integer")
        try:
            value = float(cells[-1])
        except ValueError:
            raise MalformedRowError(lineno, text, "value is not a number") from None
        if not math.isfinite(value):
            raise MalformedRowError(lineno, text, "value is not finite")
        records.append((node, value, lineno))
    if not records:
        raise NonUniformNodesError(f"{path}: no data rows")

    seen: dict[tuple[int, ...], float] = {}
    for node, value, lineno in records:
        if node in seen:
            raise DuplicateNodeError(f"line {lineno}: duplicate node {node}")
        seen[node] = value

    if width == 2:
        n = len(seen) - 1
        if set(seen) != {(i,) for i in range(n + 1)}:
            raise NonUniformNodesError("curve nodes must be the consecutive integers 0..n")
        values = np.array([seen[(i,)] for i in range(n + 1)])
    else:
        side = math.isqrt(len(seen))
        expected = {(i, j) for i in range(side) for j in range(side)}
        if side * side != len(seen) or set(seen) != expected:
            raise NonUniformNodesError("surface nodes must form the full grid 0..n x 0..n")
        values = np.array([[seen[(i, j)] for j in range(side)] for i in range(side)])
    return Dataset(path.stem, values, f"read from {path}")


def _numeric_row(cells) -> bool:
    try:
        for c in cells:
            float(c)
    except ValueError:
        return False
    return True
