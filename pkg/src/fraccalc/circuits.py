"""Fractional-order circuit elements: resistoductor, fractional integrator and
fractional differentiator, modelled as ``K s^(+-v)`` impedances."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .differint import BOUNDARY_FRACTION, gl_differint
from .errors import DomainError
from .grid import Grid, SampledSignal
from .special import gamma

__all__ = [
    "ElementKind",
    "FracElement",
    "FracTransferFunction",
    "StepResponse",
    "BodeTable",
    "principal_power",
    "impedance",
    "step_response",
    "bode_data",
]


class ElementKind(enum.Enum):
    RESISTODUCTOR = "resistoductor"
    FRAC_INTEGRATOR = "frac_integrator"
    FRAC_DIFFERENTIATOR = "frac_differentiator"


@dataclass(frozen=True)
class FracElement:
    """``Z(s) = K s^v`` (resistoductor, differentiator) or ``K s^-v`` (integrator).

    A resistoductor of order 0 is a resistor of resistance ``K``; of order 1
    an inductor of inductance ``K``.
    """

    kind: ElementKind
    K: float
    v: float

    def __post_init__(self):
        kind = ElementKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not (math.isfinite(self.K) and self.K > 0):
            raise DomainError(f"element gain must be positive, got K = {self.K}")
        if not math.isfinite(self.v):
            raise DomainError("element order must be finite")
        if kind is ElementKind.RESISTODUCTOR and not 0.0 <= self.v <= 1.0:
            raise DomainError(f"resistoductor order must lie in [0, 1], got {self.v}")
        if kind is not ElementKind.RESISTODUCTOR and not self.v > 0.0:
            raise DomainError(f"{kind.value} order must be positive, got {self.v}")

    @property
    def exponent(self) -> float:
        return -self.v if self.kind is ElementKind.FRAC_INTEGRATOR else self.v


def principal_power(s: complex, p: float) -> complex:
    """``s^p = exp(p (ln|s| + i arg s))`` with ``arg s`` in ``(-pi, pi]``."""
    s = complex(s)
    if s == 0:
        if p > 0:
            return 0j
        if p == 0:
            return 1 + 0j
        raise DomainError(f"s = 0 is a singularity of s^{p}")
    return cmath.exp(p * cmath.log(s))


def impedance(e: FracElement, s: complex) -> complex:
    return e.K * principal_power(s, e.exponent)


@dataclass(frozen=True)
class FracTransferFunction:
    """``H(s) = sum K_i s^v_i``, or its reciprocal when ``reciprocal`` is set."""

    terms: tuple[tuple[float, float], ...]
    reciprocal: bool = False

    def __post_init__(self):
        terms = tuple((float(k), float(v)) for k, v in self.terms)
        if not terms:
            raise DomainError("a transfer function needs at least one term")
        if not all(math.isfinite(k) and math.isfinite(v) for k, v in terms):
            raise DomainError("transfer function terms must be finite")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_element(cls, e: FracElement) -> "FracTransferFunction":
        return cls(((e.K, e.exponent),))

    def __call__(self, s: complex) -> complex:
        total = sum(k * principal_power(s, v) for k, v in self.terms)
        if self.reciprocal:
            if total == 0:
                raise DomainError(f"transfer function has a pole at s = {s}")
            return 1.0 / total
        return total

    def frequency_response(self, omega: Sequence[float]) -> np.ndarray:
        omega = _check_omega(omega)
        return np.array([self(1j * w) for w in omega])


@dataclass(frozen=True)
class StepResponse:
    """Closed-form step response plus its gap to a GL simulation.

    ``gl_gap`` is the sup-norm difference over nodes past the first 5% of
    the time axis.
    """

    signal: SampledSignal
    gl_signal: SampledSignal
    gl_gap: float


def step_response(e: FracElement, t_grid: Grid) -> StepResponse:
    """Unit-step response ``K t^v / Gamma(v + 1)`` of a fractional integrator."""
    if e.kind is not ElementKind.FRAC_INTEGRATOR:
        raise DomainError("step_response is defined for fractional integrators only")
    t = t_grid.nodes - t_grid.a
    closed = e.K * t**e.v / gamma(e.v + 1.0)
    step = SampledSignal(t_grid, np.ones(t_grid.n + 1))
    sim = e.K * gl_differint(step, -e.v)
    mask = t >= BOUNDARY_FRACTION * (t_grid.b - t_grid.a)
    gap = float(np.max(np.abs(closed[mask] - sim.values[mask])))
    return StepResponse(signal=SampledSignal(t_grid, closed), gl_signal=sim, gl_gap=gap)


@dataclass(frozen=True)
class BodeTable:
    omega: np.ndarray
    mag_db: np.ndarray
    phase_deg: np.ndarray

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        lines = ["omega,mag_db,phase_deg"]
        for row in zip(self.omega, self.mag_db, self.phase_deg):
            lines.append(",".join(f"{x:.17g}" for x in row))
        text = "\n".join(lines) + "\n"
        if path is not None:
            Path(path).write_text(text)
        return text


def _check_omega(omega: Iterable[float]) -> np.ndarray:
    omega = np.asarray(list(omega), dtype=float)
    if omega.size == 0 or not np.all(omega > 0) or not np.all(np.isfinite(omega)):
        raise DomainError("frequencies must be finite and positive")
    return omega


def bode_data(e: FracElement, omega: Iterable[float]) -> BodeTable:
    """Magnitude (dB) and unwrapped phase (degrees) of ``Z(i omega)``.

    Both come straight from ``log Z(i w) = log K + p (ln w + i pi/2)``, so the
    phase is exactly ``p * 90`` and the slope ``20 p`` dB per decade.
    """
    omega = _check_omega(omega)
    p = e.exponent
    mag_db = 20.0 * (math.log10(e.K) + p * np.log10(omega))
    phase = np.full_like(omega, p * 90.0)
    return BodeTable(omega=omega, mag_db=mag_db, phase_deg=phase)
