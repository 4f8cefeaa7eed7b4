import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracident import pso
from fracident.pso import PsoConfig


def sphere(x):
    return float(np.sum(x**2))


def box(d=2, lo=-1.0, hi=1.0, **kw):
    return PsoConfig(position_bounds=[(lo, hi)] * d, velocity_init_bounds=[(-0.2, 0.2)] * d, **kw)


def test_sphere_optimum_by_grid():
    grid = np.linspace(-1, 1, 201)
    best = min(itertools.product(grid, grid), key=lambda p: sphere(np.array(p)))
    assert sphere(np.array(best)) == 0.0


def test_sphere_converges():
    result = pso.run(box(seed=3), sphere)
    assert result.gbest_fitness < 1e-4
    assert len(result.history) == 40


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.integers(1, 4))
def test_history_monotone_and_positions_bounded(seed, d):
    cfg = box(d=d, lo=-0.5, hi=1.5, seed=seed, iterations=15)
    state = pso.initialize(cfg, sphere)
    seen = [[] for _ in range(cfg.swarm_size)]
    for i, x in enumerate(state.positions):
        seen[i].append(sphere(x))
    for it in range(cfg.iterations):
        pso.step(state, it)
        assert np.all(state.positions >= -0.5) and np.all(state.positions <= 1.5)
        for i, x in enumerate(state.positions):
            seen[i].append(sphere(x))
    assert all(b <= a for a, b in zip(state.history, state.history[1:]))
    for i in range(cfg.swarm_size):
        assert state.pbest_fitness[i] == min(seen[i])
        assert state.particle(i).pbest_fitness == min(seen[i])
    assert state.gbest_fitness == state.pbest_fitness.min()


def test_paper_initialisation_box():
    cfg = PsoConfig(position_bounds=[(2.0, 2.4), (0.7, 1.1)], velocity_init_bounds=[(-0.2, 0.2)] * 2, seed=7)
    state = pso.initialize(cfg, sphere)
    assert state.positions.shape == (10, 2)
    assert np.all((state.positions[:, 0] >= 2.0) & (state.positions[:, 0] <= 2.4))
    assert np.all((state.positions[:, 1] >= 0.7) & (state.positions[:, 1] <= 1.1))
    assert np.all(np.abs(state.velocities) <= 0.2)
    np.testing.assert_array_equal(state.pbest_positions, state.positions)
    assert state.gbest_fitness == min(sphere(x) for x in state.positions)


def test_degenerate_bounds():
    cfg = PsoConfig(position_bounds=[(0.3, 0.3)], velocity_init_bounds=[(0.0, 0.0)])
    state = pso.initialize(cfg, sphere)
    assert np.all(state.positions == 0.3)


def test_seed_determinism():
    a = pso.run(box(seed=11), sphere)
    b = pso.run(box(seed=11), sphere)
    assert a.history == b.history
    for x, y in zip(a.trace, b.trace):
        np.testing.assert_array_equal(x, y)


def test_inertia_schedule():
    cfg = box()
    assert cfg.inertia(0) == 0.9
    assert cfg.inertia(39) == pytest.approx(0.4, abs=1e-15)
    assert cfg.inertia(13) == pytest.approx(0.9 - 0.5 * 13 / 39)


def test_particle_at_optimum_stays_put():
    cfg = PsoConfig(position_bounds=[(-1, 1)] * 2, velocity_init_bounds=[(0, 0)] * 2, swarm_size=1, iterations=5)
    state = pso.initialize(cfg, lambda x: 0.0)
    start = state.positions.copy()
    for it in range(5):
        pso.step(state, it)
    np.testing.assert_array_equal(state.positions, start)


def test_pure_inertial_drift():
    cfg = PsoConfig(
        position_bounds=[(-100, 100)] * 2,
        velocity_init_bounds=[(-1, 1)] * 2,
        c1=0.0,
        c2=0.0,
        inertia_start=1.0,
        inertia_end=1.0,
        iterations=3,
        seed=2,
    )
    state = pso.initialize(cfg, sphere)
    x0, v0 = state.positions.copy(), state.velocities.copy()
    for it in range(3):
        pso.step(state, it)
    np.testing.assert_allclose(state.positions, x0 + 3 * v0, rtol=1e-14)


def test_clamping_keeps_velocity():
    cfg = PsoConfig(
        position_bounds=[(0, 1)], velocity_init_bounds=[(5, 5)], c1=0, c2=0, inertia_start=1, inertia_end=1, iterations=1
    )
    state = pso.step(pso.initialize(cfg, sphere), 0)
    assert np.all(state.positions == 1.0)
    assert np.all(state.velocities == 5.0)


def test_constant_fitness():
    result = pso.run(box(seed=4), lambda x: 1.0)
    assert result.history == [1.0] * 40
    assert any(np.array_equal(result.gbest_position, p) for p in result.trace[0])


def test_failed_evaluations_are_infinite():
    def fragile(x):
        if x[0] > 0:
            raise ArithmeticError("boom")
        if x[1] > 0:
            return float("nan")
        return sphere(x)

    result = pso.run(box(seed=5), fragile)
    assert result.gbest_position[0] <= 0 and result.gbest_position[1] <= 0
    assert np.isfinite(result.gbest_fitness)


def test_step_rejects_bad_iteration():
    state = pso.initialize(box(), sphere)
    with pytest.raises(ValueError):
        pso.step(state, 40)


def test_config_validation():
    with pytest.raises(ValueError):
        box(lo=1.0, hi=0.0)
    with pytest.raises(ValueError):
        box(inertia_start=0.3, inertia_end=0.4)
    with pytest.raises(ValueError):
        box(iterations=0)
