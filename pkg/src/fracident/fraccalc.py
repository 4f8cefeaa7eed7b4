r"""Grünwald-Letnikov weights and short-memory differintegrals.

For a signal sampled with period :math:`T` the differintegral of real order
:math:`\alpha` at instant :math:`t` with memory length :math:`L` is

.. math::

    D^\alpha f(t) \approx T^{-\alpha} \sum_{j=0}^{\lfloor L/T \rfloor} b_j f(t - jT),
    \qquad b_0 = 1,\quad b_j = \Bigl(1 - \frac{1+\alpha}{j}\Bigr) b_{j-1}.

Negative orders integrate, positive orders differentiate, and order zero is
the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyResultError, InputError, MisalignmentError, WindowError
from .signal import SampledSignal

# Slack for L/T and (t - t0)/T quotients that land a hair below an integer.
_GRID_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class GlWeights:
    order: float
    weights: np.ndarray

    def __len__(self):
        return self.weights.size


@lru_cache(maxsize=64)
def _weights(order: float, count: int) -> np.ndarray:
    w = np.empty(count)
    w[0] = 1.0
    if count > 1:
        j = np.arange(1, count, dtype=np.float64)
        # cumprod multiplies left to right, i.e. exactly b_j = factor_j * b_{j-1}
        w[1:] = np.cumprod(1.0 - (1.0 + order) / j)
    w.setflags(write=False)
    return w


def gl_weights(order: float, count: int) -> GlWeights:
    """Return the first ``count`` Grünwald-Letnikov weights for ``order``."""
    count = int(count)
    if count < 1:
        raise InputError(f"count must be >= 1, got {count}")
    order = float(order)
    return GlWeights(order, _weights(order, count))


@dataclass(frozen=True)
class DifferintegralRequest:
    order: float
    eval_time: float
    memory_length: float

    def __post_init__(self):
        if not self.memory_length > 0:
            raise InputError(f"memory_length must be > 0, got {self.memory_length}")


def memory_terms(memory_length: float, sample_period: float) -> int:
    """Upper summation index ``floor(L / T)``."""
    return int(math.floor(memory_length / sample_period + _GRID_EPS))


def sample_index(signal: SampledSignal, t: float) -> int:
    """Index of the sample at time ``t``; raises if ``t`` is off the grid."""
    T = signal.sample_period
    pos = (t - signal.start_time) / T
    if not math.isfinite(pos):
        raise MisalignmentError(f"time {t} is not a sample instant")
    k = int(round(pos))
    if abs(pos - k) > 0.5 + _GRID_EPS:
        raise MisalignmentError(f"time {t} is not a sample instant (grid period {T})")
    if k < 0 or k >= len(signal):
        raise WindowError(
            f"time {t} lies outside the signal [{signal.start_time}, {signal.end_time}]"
        )
    return k


def differintegrate(signal: SampledSignal, req: DifferintegralRequest) -> float:
    """Evaluate the order-``req.order`` differintegral at ``req.eval_time``.

    The window covers samples ``t, t - T, ..., t - floor(L/T) T``, both ends
    inclusive, so it needs ``floor(L/T) + 1`` samples of history.
    """
    k = sample_index(signal, req.eval_time)
    m = memory_terms(req.memory_length, signal.sample_period)
    if k - m < 0:
        raise WindowError(
            f"memory window of {req.memory_length} s before t={req.eval_time} "
            f"starts before the signal origin {signal.start_time}"
        )
    b = _weights(float(req.order), m + 1)
    window = signal.samples[k - m : k + 1][::-1]
    return math.fsum(b * window) / signal.sample_period ** req.order


def differintegrate_series(
    signal: SampledSignal, order: float, memory_length: float | None = None
) -> SampledSignal:
    """Differintegral at every sample instant.

    Instants closer than ``memory_length`` to the start use whatever history
    exists (the sum is truncated at the origin). ``memory_length=None`` means
    full history.
    """
    n = len(signal)
    if memory_length is None:
        m = n - 1
    else:
        if not memory_length > 0:
            raise InputError(f"memory_length must be > 0, got {memory_length}")
        m = min(memory_terms(memory_length, signal.sample_period), n - 1)
        if m < 0:
            raise EmptyResultError("no instant has a usable memory window")
    b = _weights(float(order), m + 1)
    out = np.convolve(signal.samples, b)[:n] / signal.sample_period ** order
    return signal.with_samples(out)
