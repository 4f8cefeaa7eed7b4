"""Seeded uniform measurement noise.

Draws come from numpy's PCG64 generator seeded with ``NoiseSpec.seed``; the
same seed gives the same sequence within one numpy release.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .signal import SampledSignal


@dataclass(frozen=True)
class NoiseSpec:
    amplitude: float
    seed: int = 0

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise InputError(f"amplitude must be >= 0, got {self.amplitude}")


def generate_noise(length: int, sample_period: float, spec: NoiseSpec, start_time: float = 0.0) -> SampledSignal:
    """Independent draws uniform on ``[-amplitude, amplitude]``."""
    if length < 1:
        raise InputError(f"length must be >= 1, got {length}")
    if spec.amplitude == 0:
        e = np.zeros(length)
    else:
        rng = np.random.default_rng(spec.seed)
        e = rng.uniform(-spec.amplitude, spec.amplitude, size=length)
    return SampledSignal(e, sample_period, start_time)


def corrupt(signal: SampledSignal, spec: NoiseSpec) -> SampledSignal:
    if spec.amplitude == 0:
        return signal
    e = generate_noise(len(signal), signal.sample_period, spec, signal.start_time)
    return signal.with_samples(signal.samples + e.samples)
