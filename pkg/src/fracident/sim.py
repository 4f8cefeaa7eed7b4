r"""Forward simulation of :math:`1/(a_1 s^\alpha + a_2 s^\beta + a_3)`.

The time-domain relation :math:`u = a_1 D^\alpha c + a_2 D^\beta c + a_3 c` is
discretised with full-history Grünwald-Letnikov sums and solved for the
newest sample at every step. The system starts at rest (``c = 0`` before
``t = 0``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, astuple

import numpy as np

from .errors import DivergenceError, InputError, ModelError
from .fraccalc import gl_weights
from .signal import SampledSignal

DIVERGENCE_BOUND = 1e6


@dataclass(frozen=True)
class FractionalModel:
    a1: float
    a2: float
    a3: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name, value in zip(("a1", "a2", "a3", "alpha", "beta"), astuple(self)):
            if not math.isfinite(value):
                raise ModelError(f"{name} must be finite, got {value}")
        if self.a1 == 0:
            raise ModelError("a1 must be non-zero (leading term)")
        if self.a3 == 0:
            raise ModelError("a3 must be non-zero (dc term)")
        if not self.beta > 0:
            raise ModelError(f"beta must be > 0, got {self.beta}")
        if not self.alpha > self.beta:
            raise ModelError(f"alpha must exceed beta, got alpha={self.alpha}, beta={self.beta}")

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return self.a1, self.a2, self.a3

    def as_dict(self) -> dict[str, float]:
        return dict(zip(("a1", "a2", "a3", "alpha", "beta"), astuple(self)))


class InputKind(enum.Enum):
    UNIT_STEP = "unit_step"
    UNIT_RAMP = "unit_ramp"
    UNIT_PARABOLA = "unit_parabola"

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self is InputKind.UNIT_STEP:
            return np.ones_like(t)
        if self is InputKind.UNIT_RAMP:
            return t.copy()
        return 0.5 * t * t


def _grid_length(duration, sample_period):
    if not sample_period > 0:
        raise InputError(f"sample_period must be > 0, got {sample_period}")
    steps = int(round(duration / sample_period))
    if steps < 10:
        raise InputError(
            f"duration must cover at least 10 sample periods, got {duration} s at {sample_period} s"
        )
    return steps + 1


def simulate_response(
    model: FractionalModel,
    input: InputKind,
    duration: float,
    sample_period: float,
    divergence_bound: float = DIVERGENCE_BOUND,
) -> SampledSignal:
    """Response of ``model`` to ``input`` sampled at ``0, T, ..., duration``."""
    n = _grid_length(duration, sample_period)
    T = float(sample_period)
    u = InputKind(input)(np.arange(n) * T)

    wa = gl_weights(model.alpha, n).weights
    wb = gl_weights(model.beta, n).weights
    kernel = model.a1 * T ** -model.alpha * wa + model.a2 * T ** -model.beta * wb
    lead = kernel[0] + model.a3
    tail = kernel[1:]

    c = np.zeros(n)
    c[0] = u[0] / lead
    for k in range(1, n):
        # c[k-1::-1] is c_{k-1}, c_{k-2}, ..., c_0
        ck = (u[k] - np.dot(tail[:k], c[k - 1 :: -1])) / lead
        if not abs(ck) <= divergence_bound:
            raise DivergenceError(
                f"response left the bound {divergence_bound:g} at t={k * T:g} s"
            )
        c[k] = ck
    return SampledSignal(c, T, 0.0)


def simulate_step_response(
    model: FractionalModel,
    duration: float,
    sample_period: float,
    divergence_bound: float = DIVERGENCE_BOUND,
) -> SampledSignal:
    return simulate_response(model, InputKind.UNIT_STEP, duration, sample_period, divergence_bound)
