"""Uniform sampling grids, sampled signals and differintegration orders."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

import numpy as np

from .errors import DomainError

__all__ = ["Grid", "SampledSignal", "Order", "as_order"]

_INT_TOL = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform lattice ``x_j = a + j*h`` for ``j = 0..n`` with ``h = (b - a)/n``."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("grid limits must be finite")
        if not self.b > self.a:
            raise DomainError(f"grid requires b > a, got a={self.a}, b={self.b}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"grid needs a positive integer number of intervals, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.a + np.arange(self.n + 1) * self.h

    def __len__(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class SampledSignal:
    """Function values ``f(x_0), ..., f(x_n)`` bound to a :class:`Grid`.

    ``values`` is stored as a read-only float array.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.grid.n + 1,):
            raise DomainError(
                f"expected {self.grid.n + 1} samples for this grid, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("signal samples must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> "SampledSignal":
        x = grid.nodes
        return cls(grid, np.broadcast_to(np.asarray(func(x), dtype=float), x.shape))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def __len__(self) -> int:
        return len(self.values)

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.grid, values)

    def __add__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar: float) -> "SampledSignal":
        return self.with_values(float(scalar) * self.values)

    __rmul__ = __mul__

    def _check_same_grid(self, other: "SampledSignal") -> None:
        if other.grid != self.grid:
            raise DomainError("signals live on different grids")

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        """Write ``x,value`` rows at full double precision; returns the text."""
        buf = io.StringIO()
        buf.write("x,value\n")
        for x, y in zip(self.nodes, self.values):
            buf.write(f"{x:.17g},{y:.17g}\n")
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source: Union[str, Path, io.TextIOBase]) -> "SampledSignal":
        """Read a signal written by :meth:`to_csv`.

        The node column must be uniform; the grid is rebuilt from its first
        and last entries.
        """
        if isinstance(source, (str, Path)):
            with open(source, newline="") as fh:
                rows = list(csv.reader(fh))
        else:
            rows = list(csv.reader(source))
        if not rows or [c.strip() for c in rows[0]] != ["x", "value"]:
            raise DomainError("CSV signal must start with the header 'x,value'")
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
        if data.ndim != 2 or data.shape[0] < 2:
            raise DomainError("CSV signal needs at least two rows")
        x, y = data[:, 0], data[:, 1]
        grid = Grid(float(x[0]), float(x[-1]), len(x) - 1)
        if not np.allclose(x, grid.nodes, rtol=0.0, atol=1e-9 * max(1.0, abs(grid.b - grid.a))):
            raise DomainError("CSV node column is not a uniform grid")
        return cls(grid, y)


@dataclass(frozen=True)
class Order:
    """Real differintegration order ``v``."""

    v: float

    def __post_init__(self):
        v = float(self.v)
        if not math.isfinite(v):
            raise DomainError(f"order must be finite, got {self.v!r}")
        object.__setattr__(self, "v", v)

    @property
    def is_integer(self) -> bool:
        return abs(self.v - round(self.v)) <= _INT_TOL

    @property
    def is_positive(self) -> bool:
        return self.v > 0.0

    @property
    def is_zero(self) -> bool:
        return self.v == 0.0

    @property
    def ceil(self) -> int:
        """``m = ceil(v)``, snapping orders within rounding of an integer."""
        if self.is_integer:
            return int(round(self.v))
        return math.ceil(self.v)

    def __float__(self) -> float:
        return self.v


def as_order(v: Union[Order, float]) -> Order:
    return v if isinstance(v, Order) else Order(v)
