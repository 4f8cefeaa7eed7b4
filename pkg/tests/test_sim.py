import math

import numpy as np
import pytest

from fracident import (
    PAPER_MODEL,
    DivergenceError,
    FractionalModel,
    InputKind,
    ModelError,
    simulate_response,
    simulate_step_response,
)


def second_order_step(t, zeta):
    """Closed-form unit-step response of 1/(s^2 + 2 zeta s + 1), 0 < zeta < 1."""
    wd = math.sqrt(1 - zeta**2)
    return 1 - np.exp(-zeta * t) * (np.cos(wd * t) + zeta / wd * np.sin(wd * t))


def test_initial_rest(paper_response):
    T = 0.001
    lead = 0.8 * T**-2.23 + 0.5 * T**-0.88 + 1.0
    assert paper_response.samples[0] == pytest.approx(1 / lead, rel=1e-12)
    assert paper_response.samples[0] < 1e-6
    assert len(paper_response) == 10_001


def test_step_halving(paper_response):
    fine = simulate_step_response(PAPER_MODEL, 10.0, 0.0005)
    coarse = paper_response.samples
    shared = fine.samples[::2]
    # relative comparison is meaningless right at the origin where c ~ 0
    mask = np.abs(coarse) > 0.05
    assert np.max(np.abs(shared[mask] - coarse[mask]) / np.abs(coarse[mask])) < 0.01
    assert np.max(np.abs(shared - coarse)) < 0.005


def test_paper_model_settles_to_dc_gain_on_long_horizon():
    # lightly damped: still swinging around 1 at t = 10 s, settled by 120 s
    c = simulate_step_response(PAPER_MODEL, 120.0, 0.01).samples
    assert abs(c[-2000:].mean() - 1.0) < 0.01


def test_paper_model_still_oscillates_at_ten_seconds(paper_response):
    c = paper_response.samples
    assert c[3000] > 1.5 and c[10_000] < 0.8


@pytest.mark.parametrize(
    "model",
    [
        FractionalModel(0.5, 1.5, 2.0, 1.8, 0.9),
        FractionalModel(0.2, 1.0, 1.0, 2.5, 1.0),
        FractionalModel(1.0, 1.0, 4.0, 1.7, 1.1),
    ],
)
def test_steady_state(model):
    c = simulate_step_response(model, 10.0, 0.001).samples
    tail = c[-len(c) // 20 :]
    assert tail.mean() == pytest.approx(1 / model.a3, rel=0.1)


def test_second_order_closed_form():
    zeta = 0.5
    c = simulate_step_response(FractionalModel(1.0, 2 * zeta, 1.0, 2.0, 1.0), 10.0, 0.001)
    assert np.max(np.abs(c.samples - second_order_step(c.times, zeta))) < 0.005


def test_model_invariants():
    with pytest.raises(ModelError, match="a1"):
        FractionalModel(0.0, 0.5, 1.0, 2.23, 0.88)
    with pytest.raises(ModelError, match="a3"):
        FractionalModel(0.8, 0.5, 0.0, 2.23, 0.88)
    with pytest.raises(ModelError, match="alpha must exceed beta"):
        FractionalModel(0.8, 0.5, 1.0, 0.5, 0.88)
    with pytest.raises(ModelError, match="beta"):
        FractionalModel(0.8, 0.5, 1.0, 0.5, -0.1)


def test_inputs():
    t = np.array([0.0, 1.0, 2.0])
    assert InputKind.UNIT_STEP(t).tolist() == [1, 1, 1]
    assert InputKind.UNIT_RAMP(t).tolist() == [0, 1, 2]
    assert InputKind.UNIT_PARABOLA(t).tolist() == [0, 0.5, 2]
    ramp = simulate_response(PAPER_MODEL, InputKind.UNIT_RAMP, 1.0, 0.01)
    assert ramp.samples[0] == 0.0


def test_step_paths_identical():
    a = simulate_response(PAPER_MODEL, InputKind.UNIT_STEP, 2.0, 0.01)
    b = simulate_step_response(PAPER_MODEL, 2.0, 0.01)
    assert np.array_equal(a.samples, b.samples)


def test_ramp_is_integrated_step():
    step = simulate_step_response(PAPER_MODEL, 5.0, 0.001)
    ramp = simulate_response(PAPER_MODEL, InputKind.UNIT_RAMP, 5.0, 0.001)
    # linear system: ramp response is the running integral of the step response
    integral = np.cumsum(step.samples) * 0.001
    assert np.max(np.abs(ramp.samples - integral)) < 2e-3


def test_divergence_guard():
    unstable = FractionalModel(1.0, -3.0, 1.0, 2.0, 1.0)
    with pytest.raises(DivergenceError):
        simulate_step_response(unstable, 30.0, 0.01, divergence_bound=1e3)


def test_duration_too_short():
    with pytest.raises(ValueError):
        simulate_step_response(PAPER_MODEL, 0.05, 0.01)
