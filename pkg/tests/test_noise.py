import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracident import NoiseSpec, SampledSignal, corrupt, generate_noise


def test_zero_amplitude_is_exactly_zero():
    e = generate_noise(1000, 0.001, NoiseSpec(0.0, 5))
    assert np.all(e.samples == 0.0)


@given(amplitude=st.floats(0, 10), seed=st.integers(0, 2**63 - 1), length=st.integers(1, 500))
def test_bounds(amplitude, seed, length):
    e = generate_noise(length, 0.01, NoiseSpec(amplitude, seed)).samples
    assert e.size == length
    assert np.all(np.abs(e) <= amplitude)


def test_mean_within_clt_band():
    n = 10_001
    e = generate_noise(n, 0.001, NoiseSpec(0.05, 42)).samples
    assert abs(e.mean()) < 3 * 0.05 / math.sqrt(3 * n)


def test_determinism_and_seed_sensitivity():
    a = generate_noise(100, 0.01, NoiseSpec(0.05, 1)).samples
    b = generate_noise(100, 0.01, NoiseSpec(0.05, 1)).samples
    c = generate_noise(100, 0.01, NoiseSpec(0.05, 2)).samples
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_negative_amplitude_rejected():
    with pytest.raises(ValueError):
        NoiseSpec(-0.1)


def test_corrupt(paper_response):
    assert corrupt(paper_response, NoiseSpec(0.0, 3)) is paper_response
    spec = NoiseSpec(0.05, 9)
    noisy = corrupt(paper_response, spec)
    assert noisy.sample_period == paper_response.sample_period
    assert noisy.start_time == paper_response.start_time
    assert np.max(np.abs(noisy.samples - paper_response.samples)) <= 0.05
    zero = SampledSignal(np.zeros(50), 0.1, 2.0)
    np.testing.assert_array_equal(
        corrupt(zero, spec).samples, generate_noise(50, 0.1, spec, 2.0).samples
    )
