"""Linear fractional relaxation equations and discrete fractional sums.

The continuous model is ``D^v y = -a y + u`` on ``[0, T]`` with ``y(0) = y0``,
``0 < v <= 1``. The Grünwald-Letnikov operator is applied to ``y - y0``
rather than ``y``: the GL derivative of a nonzero constant does not vanish
for fractional ``v``, and the shifted form is the one whose exact solution is
``y0 * E_v(-a t^v)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, SingularStepError
from .grid import Grid, SampledSignal
from .special import fractional_sum_kernel, gl_weights

__all__ = [
    "FDEProblem",
    "FDESolution",
    "solve_linear_fde",
    "fractional_sum",
    "solve_frac_difference",
    "forcing_from_spec",
    "load_problem",
]

SCHEME = "implicit-GL"


def _check_order(v: float) -> None:
    if not 0.0 < v <= 1.0:
        raise DomainError(f"order must lie in (0, 1], got {v}")


@dataclass(frozen=True)
class FDEProblem:
    v: float
    a_coeff: float
    forcing: SampledSignal
    y0: float

    def __post_init__(self):
        _check_order(self.v)
        if self.forcing.grid.a != 0.0:
            raise DomainError("FDE problems are posed on grids starting at t = 0")

    @property
    def grid(self) -> Grid:
        return self.forcing.grid


@dataclass(frozen=True)
class FDESolution:
    y: SampledSignal
    scheme: str
    residual_norm: float


def solve_linear_fde(p: FDEProblem) -> FDESolution:
    """Implicit GL stepping for ``D^v y = -a y + u``.

    At node ``j >= 1`` the discrete equation

        h^-v sum_{k=0}^{j} w_k (y_{j-k} - y0) = -a y_j + u_j

    is linear in ``y_j`` with coefficient ``h^-v + a``.
    """
    grid = p.grid
    n, h, v, a = grid.n, grid.h, p.v, float(p.a_coeff)
    scale = h ** (-v)
    denom = scale + a
    if denom == 0.0:
        raise SingularStepError(f"step denominator h^-v + a vanishes (a = {a}, h = {h})")
    w = gl_weights(v, n).weights
    u = p.forcing.values
    y0 = float(p.y0)
    dev = np.zeros(n + 1)  # y - y0
    for j in range(1, n + 1):
        # w[1:j+1] against dev[j-1], ..., dev[0]
        history = np.dot(w[1 : j + 1], dev[j - 1 :: -1])
        dev[j] = (u[j] - a * y0 - scale * history) / denom
    y = dev + y0
    lhs = scale * np.convolve(w, dev)[: n + 1]
    residual = lhs[1:] + a * y[1:] - u[1:]
    res_norm = float(np.max(np.abs(residual))) if n else 0.0
    return FDESolution(y=SampledSignal(grid, y), scheme=SCHEME, residual_norm=res_norm)


def fractional_sum(x: Sequence[float], v: float) -> np.ndarray:
    """Discrete fractional sum ``(Delta^-v x)[n] = sum_k C(k + v - 1, k) x[n - k]``.

    ``v = 1`` gives the running sum.
    """
    if not v > 0:
        raise DomainError(f"fractional_sum needs v > 0, got {v}")
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return x.copy()
    kernel = fractional_sum_kernel(v, x.size - 1)
    return np.convolve(kernel, x)[: x.size]


def solve_frac_difference(
    v: float, a_coeff: float, u: Sequence[float], y0: float
) -> np.ndarray:
    """Solve ``sum_{k=0}^{n} w_k (y[n-k] - y0) = -a y[n] + u[n]`` for ``n = 0, 1, ...``.

    Unit step. The recursion starts at ``n = 0``, so ``y[0]`` is already
    driven by ``u[0]`` rather than pinned to ``y0``: with ``v = 1``, ``a = 0``,
    ``u = 1`` and ``y0 = 0`` the solution is ``y[n] = n + 1``.
    """
    _check_order(v)
    a = float(a_coeff)
    denom = 1.0 + a
    if denom == 0.0:
        raise SingularStepError("difference equation is singular for a = -1")
    u = np.asarray(u, dtype=float)
    N = u.size
    w = gl_weights(v, max(N - 1, 0)).weights
    y0 = float(y0)
    dev = np.zeros(N)
    for n in range(N):
        history = np.dot(w[1 : n + 1], dev[n - 1 :: -1]) if n else 0.0
        dev[n] = (u[n] - a * y0 - history) / denom
    return dev + y0


def forcing_from_spec(spec, grid: Grid) -> SampledSignal:
    """Build a forcing signal from ``"const:c"``, ``"zero"``, ``"impulse"`` or a list."""
    if isinstance(spec, str):
        if spec == "zero":
            vals = np.zeros(grid.n + 1)
        elif spec == "impulse":
            vals = np.zeros(grid.n + 1)
            vals[0] = 1.0
        elif spec.startswith("const:"):
            try:
                c = float(spec.split(":", 1)[1])
            except ValueError:
                raise DomainError(f"bad constant forcing {spec!r}") from None
            vals = np.full(grid.n + 1, c)
        else:
            raise DomainError(f"unknown forcing {spec!r}")
    else:
        vals = np.asarray(spec, dtype=float)
        if vals.shape != (grid.n + 1,):
            raise DomainError(
                f"inline forcing needs {grid.n + 1} values, got {vals.size}"
            )
    return SampledSignal(grid, vals)


def load_problem(source: Union[str, Path, dict]) -> FDEProblem:
    """Read ``{v, a, y0, T, n, forcing}`` from a JSON file or an already parsed dict."""
    if isinstance(source, dict):
        cfg = source
    else:
        cfg = json.loads(Path(source).read_text())
    missing = {"v", "n"} - cfg.keys()
    if missing:
        raise DomainError(f"problem config is missing {sorted(missing)}")
    grid = Grid(0.0, float(cfg.get("T", 1.0)), int(cfg["n"]))
    forcing = forcing_from_spec(cfg.get("forcing", "zero"), grid)
    return FDEProblem(
        v=float(cfg["v"]),
        a_coeff=float(cfg.get("a", 0.0)),
        forcing=forcing,
        y0=float(cfg.get("y0", 0.0)),
    )
