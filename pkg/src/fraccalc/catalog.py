"""Fixed catalog of test functions usable from the command line."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .grid import Grid, SampledSignal

FUNCTIONS = {
    "const": lambda x: np.ones_like(x),
    "linear": lambda x: x,
    "square": lambda x: x**2,
    "sin": np.sin,
    "exp_decay": lambda x: np.exp(-x),
}
NAMES = tuple(FUNCTIONS)


def get(name: str):
    try:
        return FUNCTIONS[name]
    except KeyError:
        raise DomainError(f"unknown function {name!r}; choose from {', '.join(NAMES)}") from None


def sample(name: str, grid: Grid) -> SampledSignal:
    return SampledSignal.from_function(grid, get(name))
