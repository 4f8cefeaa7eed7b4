"""Particle swarm optimisation with a linearly decreasing inertia weight.

Minimises a scalar fitness over a box. Velocities are unbounded; positions
that leave the box are clamped coordinate-wise to the boundary and keep their
velocity. Fitness evaluations that raise a numerical or value error, or
return NaN, count as ``+inf``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InputError

log = logging.getLogger(__name__)

Fitness = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class PsoConfig:
    position_bounds: Sequence[tuple[float, float]]
    velocity_init_bounds: Sequence[tuple[float, float]]
    swarm_size: int = 10
    iterations: int = 40
    c1: float = 1.4
    c2: float = 1.4
    inertia_start: float = 0.9
    inertia_end: float = 0.4
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "position_bounds", tuple(tuple(map(float, b)) for b in self.position_bounds))
        object.__setattr__(self, "velocity_init_bounds", tuple(tuple(map(float, b)) for b in self.velocity_init_bounds))
        if len(self.position_bounds) != len(self.velocity_init_bounds) or not self.position_bounds:
            raise InputError("position_bounds and velocity_init_bounds need the same, non-zero length")
        for name in ("position_bounds", "velocity_init_bounds"):
            for lo, hi in getattr(self, name):
                if not lo <= hi:
                    raise InputError(f"{name}: ({lo}, {hi}) is not ordered")
        if self.swarm_size < 1 or self.iterations < 1:
            raise InputError("swarm_size and iterations must be >= 1")
        if not self.inertia_start >= self.inertia_end:
            raise InputError("inertia_start must be >= inertia_end")

    @property
    def dims(self) -> int:
        return len(self.position_bounds)

    def inertia(self, iteration: int) -> float:
        if self.iterations == 1:
            return self.inertia_start
        frac = iteration / (self.iterations - 1)
        return self.inertia_start - (self.inertia_start - self.inertia_end) * frac


@dataclass
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float


@dataclass
class PsoState:
    cfg: PsoConfig
    fitness: Fitness
    rng: np.random.Generator
    positions: np.ndarray  # (N, D)
    velocities: np.ndarray
    current_fitness: np.ndarray
    pbest_positions: np.ndarray
    pbest_fitness: np.ndarray
    gbest_position: np.ndarray
    gbest_fitness: float
    history: list[float] = field(default_factory=list)
    trace: list[np.ndarray] = field(default_factory=list)  # positions after init and each step

    def particle(self, i: int) -> Particle:
        return Particle(
            self.positions[i].copy(),
            self.velocities[i].copy(),
            self.pbest_positions[i].copy(),
            float(self.pbest_fitness[i]),
        )


@dataclass
class SwarmResult:
    gbest_position: np.ndarray
    gbest_fitness: float
    history: list[float]
    trace: list[np.ndarray]


def _evaluate(fitness: Fitness, x: np.ndarray) -> float:
    try:
        f = float(fitness(x.copy()))
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        log.debug("fitness failed at %s: %s", x, exc)
        return math.inf
    return math.inf if math.isnan(f) else f


def _evaluate_all(fitness, positions):
    return np.array([_evaluate(fitness, x) for x in positions])


def initialize(cfg: PsoConfig, fitness: Fitness) -> PsoState:
    rng = np.random.default_rng(cfg.seed)
    lo, hi = np.array(cfg.position_bounds).T
    vlo, vhi = np.array(cfg.velocity_init_bounds).T
    n, d = cfg.swarm_size, cfg.dims
    positions = lo + (hi - lo) * rng.random((n, d))
    velocities = vlo + (vhi - vlo) * rng.random((n, d))
    fit = _evaluate_all(fitness, positions)
    g = int(np.argmin(fit))
    return PsoState(
        cfg=cfg,
        fitness=fitness,
        rng=rng,
        positions=positions,
        velocities=velocities,
        current_fitness=fit,
        pbest_positions=positions.copy(),
        pbest_fitness=fit.copy(),
        gbest_position=positions[g].copy(),
        gbest_fitness=float(fit[g]),
        trace=[positions.copy()],
    )


def step(state: PsoState, iteration: int) -> PsoState:
    """Advance the swarm by one synchronous iteration (in place)."""
    cfg = state.cfg
    if not 0 <= iteration < cfg.iterations:
        raise InputError(f"iteration {iteration} outside [0, {cfg.iterations})")
    n, d = state.positions.shape
    w = cfg.inertia(iteration)
    phi1 = state.rng.random((n, d))
    phi2 = state.rng.random((n, d))
    x = state.positions
    state.velocities = (
        w * state.velocities
        + cfg.c1 * phi1 * (state.pbest_positions - x)
        + cfg.c2 * phi2 * (state.gbest_position - x)
    )
    lo, hi = np.array(cfg.position_bounds).T
    state.positions = np.clip(x + state.velocities, lo, hi)

    fit = _evaluate_all(state.fitness, state.positions)
    state.current_fitness = fit
    improved = fit < state.pbest_fitness
    state.pbest_positions[improved] = state.positions[improved]
    state.pbest_fitness[improved] = fit[improved]
    g = int(np.argmin(state.pbest_fitness))
    if state.pbest_fitness[g] < state.gbest_fitness:
        state.gbest_fitness = float(state.pbest_fitness[g])
        state.gbest_position = state.pbest_positions[g].copy()
    state.history.append(state.gbest_fitness)
    state.trace.append(state.positions.copy())
    return state


def run(cfg: PsoConfig, fitness: Fitness) -> SwarmResult:
    state = initialize(cfg, fitness)
    for it in range(cfg.iterations):
        step(state, it)
        log.debug("iteration %d: gbest %.6g at %s", it, state.gbest_fitness, state.gbest_position)
    return SwarmResult(state.gbest_position.copy(), state.gbest_fitness, list(state.history), state.trace)
