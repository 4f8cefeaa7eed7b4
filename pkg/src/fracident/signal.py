from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Uniformly sampled real time series.

    Sample ``k`` sits at ``start_time + k * sample_period``. The sample array
    is stored read-only so instances can be shared freely.
    """

    samples: np.ndarray
    sample_period: float
    start_time: float = 0.0

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        if samples.size == 0:
            raise InputError("samples must be non-empty")
        if not self.sample_period > 0:
            raise InputError(f"sample_period must be > 0, got {self.sample_period}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_period", float(self.sample_period))
        object.__setattr__(self, "start_time", float(self.start_time))

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.samples.size) * self.sample_period

    @property
    def end_time(self) -> float:
        return self.start_time + (self.samples.size - 1) * self.sample_period

    def with_samples(self, samples) -> SampledSignal:
        return SampledSignal(samples, self.sample_period, self.start_time)

    def decimate(self, factor: int) -> SampledSignal:
        """Keep every ``factor``-th sample, starting with the first."""
        if factor < 1:
            raise InputError(f"decimation factor must be >= 1, got {factor}")
        return SampledSignal(self.samples[::factor], self.sample_period * factor, self.start_time)

    @classmethod
    def constant(cls, value, length, sample_period, start_time=0.0) -> SampledSignal:
        return cls(np.full(length, float(value)), sample_period, start_time)
