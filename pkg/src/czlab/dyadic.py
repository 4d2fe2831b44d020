"""Dyadic grid substrate: cubes, dyadic indices, grid functions and cell sets.

Everything lives on a base interval split into ``2**L`` equal cells; functions
are constant on cells, so averages, level sets and measures are finite sums.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .errors import InvalidCubeError, ShapeError


def count_floor(x: float) -> int:
    """floor(x), snapping values within 1e-9 of an integer onto it.

    Cell counts like ``lam * n`` are exact in real arithmetic but may land a
    hair below an integer in floating point.
    """
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return int(math.floor(x))


def log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ShapeError(f"length {n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class Cube:
    origin: float = 0.0
    side: float = 1.0

    def __post_init__(self):
        if not self.side > 0:
            raise InvalidCubeError(f"cube side must be positive, got {self.side}")

    @property
    def measure(self) -> float:
        return self.side


ROOT_CUBE = Cube()


@dataclass(frozen=True, order=True)
class DyadicIndex:
    """Dyadic subcube ``(level, position)`` of the base cube."""

    level: int = 0
    position: int = 0

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.position < (1 << self.level):
            raise InvalidCubeError(f"invalid dyadic index ({self.level}, {self.position})")

    @property
    def parent(self) -> DyadicIndex:
        if self.level == 0:
            raise InvalidCubeError("the root cube has no dyadic parent")
        return DyadicIndex(self.level - 1, self.position // 2)

    @property
    def children(self) -> tuple[DyadicIndex, DyadicIndex]:
        return (DyadicIndex(self.level + 1, 2 * self.position),
                DyadicIndex(self.level + 1, 2 * self.position + 1))

    def contains(self, other: DyadicIndex) -> bool:
        if other.level < self.level:
            return False
        return other.position >> (other.level - self.level) == self.position

    def cells(self, L: int) -> slice:
        """Slice of the finest cells covered by this cube at resolution ``L``."""
        if self.level > L:
            raise InvalidCubeError(f"cube level {self.level} exceeds resolution {L}")
        size = 1 << (L - self.level)
        return slice(self.position * size, (self.position + 1) * size)

    def measure(self, base: Cube = ROOT_CUBE) -> float:
        return base.side * 2.0 ** (-self.level)

    def interval(self, base: Cube = ROOT_CUBE) -> tuple[float, float]:
        side = self.measure(base)
        a = base.origin + self.position * side
        return a, a + side

    def as_pair(self) -> list[int]:
        return [self.level, self.position]


ROOT = DyadicIndex(0, 0)


def enumerate_dyadic(Q0: Cube, L: int) -> Iterator[DyadicIndex]:
    """All dyadic subcubes down to level ``L``, level-major then by position.

    ``Q0`` only fixes the geometry; indices are relative to it.
    """
    if L < 1:
        raise InvalidCubeError(f"resolution must be >= 1, got {L}")
    for k in range(L + 1):
        for j in range(1 << k):
            yield DyadicIndex(k, j)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Piecewise-constant function on the ``2**L`` dyadic cells of ``base``."""

    samples: np.ndarray
    base: Cube = field(default=ROOT_CUBE)

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 1:
            raise ShapeError("samples must be one-dimensional")
        log2_exact(arr.size)
        if arr.size < 2:
            raise ShapeError("resolution must be at least 1 (two cells)")
        if not np.all(np.isfinite(arr)):
            raise ShapeError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def resolution(self) -> int:
        return self.samples.size.bit_length() - 1

    @property
    def cell_width(self) -> float:
        return self.base.side / self.samples.size

    def midpoints(self) -> np.ndarray:
        return self.base.origin + (np.arange(self.n) + 0.5) * self.cell_width

    def like(self, samples) -> GridFunction:
        return GridFunction(samples, self.base)

    def restrict(self, Q: DyadicIndex) -> np.ndarray:
        return self.samples[Q.cells(self.resolution)]

    def same_grid(self, other: GridFunction) -> bool:
        return self.n == other.n and self.base == other.base

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], L: int,
                      base: Cube = ROOT_CUBE) -> GridFunction:
        """Sample ``func`` at cell midpoints."""
        x = base.origin + (np.arange(1 << L) + 0.5) * base.side / (1 << L)
        return cls(np.broadcast_to(func(x), x.shape), base)

    @classmethod
    def constant(cls, c: float, L: int, base: Cube = ROOT_CUBE) -> GridFunction:
        return cls(np.full(1 << L, float(c)), base)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cell_index", "value"])
        for i, v in enumerate(self.samples):
            w.writerow([i, repr(float(v))])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source, base: Cube = ROOT_CUBE) -> GridFunction:
        """Read the ``cell_index,value`` format; ``source`` is a path or CSV text."""
        if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
            text = Path(source).read_text()
        else:
            text = source
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["cell_index", "value"]:
            raise ShapeError("expected header 'cell_index,value'")
        body = [r for r in rows[1:] if r]
        values = np.empty(len(body))
        seen = np.zeros(len(body), dtype=bool)
        for r in body:
            i = int(r[0])
            if not 0 <= i < len(body) or seen[i]:
                raise ShapeError(f"bad or duplicate cell index {i}")
            seen[i] = True
            values[i] = float(r[1])
        return cls(values, base)


@dataclass(frozen=True, eq=False)
class CellSet:
    """Union of finest cells, stored as a boolean mask."""

    membership: np.ndarray

    def __post_init__(self):
        mask = np.array(self.membership, dtype=bool)
        log2_exact(mask.size)
        mask.setflags(write=False)
        object.__setattr__(self, "membership", mask)

    @property
    def resolution(self) -> int:
        return self.membership.size.bit_length() - 1

    @property
    def count(self) -> int:
        return int(self.membership.sum())

    def measure(self, base: Cube = ROOT_CUBE) -> float:
        return self.count * base.side / self.membership.size

    @classmethod
    def empty(cls, L: int) -> CellSet:
        return cls(np.zeros(1 << L, dtype=bool))

    @classmethod
    def of_cube(cls, Q: DyadicIndex, L: int) -> CellSet:
        m = np.zeros(1 << L, dtype=bool)
        m[Q.cells(L)] = True
        return cls(m)

    def __or__(self, other: CellSet) -> CellSet:
        return CellSet(self.membership | other.membership)

    def __and__(self, other: CellSet) -> CellSet:
        return CellSet(self.membership & other.membership)

    def __sub__(self, other: CellSet) -> CellSet:
        return CellSet(self.membership & ~other.membership)

    def issubset(self, other: CellSet) -> bool:
        return not np.any(self.membership & ~other.membership)


def average(f: GridFunction, Q: DyadicIndex) -> float:
    if Q.level > f.resolution:
        raise InvalidCubeError(f"cube level {Q.level} exceeds resolution {f.resolution}")
    return float(f.restrict(Q).mean())


def level_set(f: GridFunction, threshold: float) -> CellSet:
    """Cells where ``|f| > threshold`` (strict)."""
    return CellSet(np.abs(f.samples) > threshold)


def level_averages(values: np.ndarray) -> list[np.ndarray]:
    """Averages over every dyadic cube, one array per level (root first)."""
    n = values.size
    L = log2_exact(n)
    out = [None] * (L + 1)
    cur = np.asarray(values, dtype=float)
    out[L] = cur
    for k in range(L - 1, -1, -1):
        cur = 0.5 * (cur[0::2] + cur[1::2])
        out[k] = cur
    return out


def spread_levels(per_level: list[np.ndarray], n: int) -> np.ndarray:
    """Per-cell maximum over the dyadic cubes containing each cell."""
    out = np.full(n, -np.inf)
    for vals in per_level:
        out = np.maximum(out, np.repeat(vals, n // vals.size))
    return out
