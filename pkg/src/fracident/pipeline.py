"""Complete identification: PSO over the two orders, linear solve for the rest.

For a candidate ``(alpha, beta)`` the coefficients follow from
:func:`fracident.linear.identify_coefficients`; the candidate's fitness is the
sum of squared deviations between the measured step response and the
candidate model's simulated step response on a coarse comparison grid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import pso
from .errors import ConfigError, InputError, NoSolutionError
from .fraccalc import DifferintegralRequest, differintegrate
from .io import write_signal, write_table
from .linear import LinearIdentConfig, build_equations, identify_coefficients, solve_coefficients
from .noise import NoiseSpec, corrupt, generate_noise
from .signal import SampledSignal
from .sim import FractionalModel, simulate_step_response

log = logging.getLogger(__name__)

PAPER_MODEL = FractionalModel(a1=0.8, a2=0.5, a3=1.0, alpha=2.23, beta=0.88)
TABLE1_ORDERS = (1.5, 1.2, 0.9, 0.6, 0.3, -0.3, -0.6, -0.9, -1.2, -1.5)
PARAMS = ("a1", "a2", "a3", "alpha", "beta")


def _multiple(coarse, fine, what):
    ratio = coarse / fine
    k = int(round(ratio))
    if k < 1 or abs(ratio - k) > 1e-6 * ratio:
        raise ConfigError(what, f"{coarse} is not an integer multiple of {fine}")
    return k


@dataclass(frozen=True)
class IdentificationProblem:
    measured_output: SampledSignal
    alpha_range: tuple[float, float] = (2.0, 2.4)
    beta_range: tuple[float, float] = (0.7, 1.1)
    linear_cfg: LinearIdentConfig = LinearIdentConfig()
    fitness_sample_period: float = 0.05
    fitness_horizon: float = 10.0
    # Grid the trial model is simulated on before decimation; None means the
    # measurement grid.
    simulation_period: float | None = None

    def __post_init__(self):
        for name in ("alpha_range", "beta_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ConfigError(name, f"({lo}, {hi}) is not ordered")
            object.__setattr__(self, name, (float(lo), float(hi)))
        y = self.measured_output
        if y.start_time != 0.0:
            raise ConfigError("measured_output", "step response must start at t = 0")
        if self.fitness_horizon > y.end_time + 0.5 * y.sample_period:
            raise ConfigError("fitness_horizon", f"{self.fitness_horizon} s exceeds the record ({y.end_time} s)")
        _multiple(self.fitness_sample_period, y.sample_period, "fitness_sample_period")
        _multiple(self.fitness_sample_period, self.sim_period, "fitness_sample_period")

    @property
    def sim_period(self) -> float:
        return self.simulation_period or self.measured_output.sample_period

    def measured_on_fitness_grid(self) -> np.ndarray:
        y = self.measured_output
        k = _multiple(self.fitness_sample_period, y.sample_period, "fitness_sample_period")
        count = int(round(self.fitness_horizon / self.fitness_sample_period)) + 1
        return y.samples[::k][:count]

    def model_on_fitness_grid(self, model: FractionalModel) -> np.ndarray:
        p = simulate_step_response(model, self.fitness_horizon, self.sim_period)
        k = _multiple(self.fitness_sample_period, self.sim_period, "fitness_sample_period")
        return p.samples[::k]


@dataclass
class IdentificationResult:
    model: FractionalModel
    fitness: float
    convergence_history: list[float]
    per_parameter_error_pct: dict[str, float] | None = None
    trace: list[np.ndarray] = field(default_factory=list, repr=False)


def percent_errors(estimate: FractionalModel, truth: FractionalModel) -> dict[str, float]:
    """Relative error in percent; a zero true value reports the absolute error x100."""
    est, ref = estimate.as_dict(), truth.as_dict()
    return {k: 100.0 * abs(est[k] - ref[k]) / (abs(ref[k]) or 1.0) for k in PARAMS}


def model_sse(problem: IdentificationProblem, model: FractionalModel, reference=None) -> float:
    """Sum of squared deviations on the fitness grid (``reference`` defaults to the measurement)."""
    c = problem.measured_on_fitness_grid() if reference is None else reference
    p = problem.model_on_fitness_grid(model)
    return float(np.sum((c - p) ** 2))


def _candidate_model(problem, alpha, beta):
    a1, a2, a3 = identify_coefficients(problem.measured_output, alpha, beta, problem.linear_cfg)
    return FractionalModel(a1, a2, a3, alpha, beta)


def fitness_of_candidate(problem: IdentificationProblem, alpha: float, beta: float) -> float:
    """Fitness F for one pair of orders; ``inf`` when no usable model exists."""
    alpha, beta = float(alpha), float(beta)
    (alo, ahi), (blo, bhi) = problem.alpha_range, problem.beta_range
    if not (alo <= alpha <= ahi and blo <= beta <= bhi) or not alpha > beta:
        return math.inf
    try:
        model = _candidate_model(problem, alpha, beta)
        return model_sse(problem, model)
    except (ArithmeticError, ValueError) as exc:
        log.debug("candidate (%g, %g) rejected: %s", alpha, beta, exc)
        return math.inf


def default_pso_config(problem: IdentificationProblem, seed: int = 0, **overrides) -> pso.PsoConfig:
    cfg = pso.PsoConfig(
        position_bounds=(problem.alpha_range, problem.beta_range),
        velocity_init_bounds=((-0.2, 0.2), (-0.2, 0.2)),
        seed=seed,
    )
    return replace(cfg, **overrides) if overrides else cfg


def identify_full(
    problem: IdentificationProblem, pso_cfg: pso.PsoConfig, truth: FractionalModel | None = None
) -> IdentificationResult:
    result = pso.run(pso_cfg, lambda x: fitness_of_candidate(problem, x[0], x[1]))
    if not math.isfinite(result.gbest_fitness):
        raise NoSolutionError("every candidate evaluated by the swarm was infeasible")
    alpha, beta = map(float, result.gbest_position)
    model = _candidate_model(problem, alpha, beta)
    fitness = model_sse(problem, model)
    return IdentificationResult(
        model=model,
        fitness=fitness,
        convergence_history=result.history,
        per_parameter_error_pct=percent_errors(model, truth) if truth is not None else None,
        trace=result.trace,
    )


# --- canned experiments -----------------------------------------------------


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    out_dir: Path | None = None
    seed: int = 0
    seeds: int = 10
    amplitude: float | None = None  # None: the experiment's own default
    draws: int = 100
    model: FractionalModel = PAPER_MODEL
    duration: float = 10.0
    sample_period: float = 0.001
    eval_time: float = 10.0
    memory_length: float = 10.0
    fitness_sample_period: float = 0.05
    swarm_size: int = 10
    iterations: int = 40


@dataclass
class ExperimentReport:
    name: str
    summary: dict
    artifacts: list[Path] = field(default_factory=list)
    tables: dict = field(default_factory=dict, repr=False)


EXPERIMENTS = ("section-4a", "section-4b", "table-1", "table-2", "figures", "custom")


def _validate(spec: ExperimentSpec) -> str:
    name = spec.name.removeprefix("paper-")
    if name not in EXPERIMENTS:
        raise ConfigError("name", f"unknown experiment {spec.name!r}; choose from {', '.join(EXPERIMENTS)}")
    if spec.seeds < 1:
        raise ConfigError("seeds", "must be >= 1")
    if spec.draws < 1:
        raise ConfigError("draws", "must be >= 1")
    if spec.amplitude is not None and spec.amplitude < 0:
        raise ConfigError("amplitude", "must be >= 0")
    if spec.duration < spec.eval_time:
        raise ConfigError("duration", "must reach eval_time")
    return name


def _linear_cfg(spec):
    return LinearIdentConfig(spec.eval_time, spec.memory_length, spec.sample_period)


def _problem(spec, measured):
    return IdentificationProblem(
        measured,
        linear_cfg=_linear_cfg(spec),
        fitness_sample_period=spec.fitness_sample_period,
        fitness_horizon=spec.duration,
    )


class _Writer:
    def __init__(self, out_dir):
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.paths: list[Path] = []
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    def signal(self, name, signal):
        if self.out_dir is not None:
            path = self.out_dir / name
            write_signal(signal, path)
            self.paths.append(path)

    def table(self, name, header, rows):
        if self.out_dir is not None:
            path = self.out_dir / name
            write_table(path, header, rows)
            self.paths.append(path)


def _section4(spec, writer, amplitude):
    clean = simulate_step_response(spec.model, spec.duration, spec.sample_period)
    measured = corrupt(clean, NoiseSpec(amplitude, spec.seed))
    problem = _problem(spec, measured)
    m = spec.model
    system = build_equations(measured, m.alpha, m.beta, problem.linear_cfg)
    a1, a2, a3 = solve_coefficients(system)
    estimate = FractionalModel(a1, a2, a3, m.alpha, m.beta)
    errors = percent_errors(estimate, m)
    sse = model_sse(problem, estimate, reference=_problem(spec, clean).measured_on_fitness_grid())
    writer.signal("step_response.csv", measured)
    writer.table(
        "equations.csv",
        ["row", "order_alpha", "order_beta", "order_dc", "d_alpha", "d_beta", "d_dc", "rhs"],
        [[r, *map(float, system.orders[r]), *map(float, system.matrix[r]), float(system.rhs[r])] for r in range(3)],
    )
    writer.table(
        "coefficients.csv",
        ["parameter", "true", "estimate", "error_pct"],
        [[k, float(m.as_dict()[k]), float(estimate.as_dict()[k]), errors[k]] for k in ("a1", "a2", "a3")],
    )
    summary = {
        "amplitude": amplitude,
        "seed": spec.seed,
        "matrix": system.matrix.tolist(),
        "rhs": system.rhs.tolist(),
        "coefficients": [a1, a2, a3],
        "error_pct": {k: errors[k] for k in ("a1", "a2", "a3")},
        "sse_vs_clean": sse,
    }
    return summary, {"system": system, "estimate": estimate}


def attenuation_medians(draws: int, seed: int, orders=TABLE1_ORDERS, amplitude=0.01,
                        sample_period=0.001, memory_length=10.0, eval_time=10.0):
    """Median |D^order e| over ``draws`` independent noise records."""
    n = int(round(eval_time / sample_period)) + 1
    noise = generate_noise(draws * n, sample_period, NoiseSpec(amplitude, seed)).samples.reshape(draws, n)
    values = np.empty((draws, len(orders)))
    for i, row in enumerate(noise):
        e = SampledSignal(row, sample_period)
        for j, order in enumerate(orders):
            values[i, j] = differintegrate(e, DifferintegralRequest(order, eval_time, memory_length))
    return np.median(np.abs(values), axis=0), values


def _table1(spec, writer):
    amplitude = 0.01 if spec.amplitude is None else spec.amplitude
    kw = dict(amplitude=amplitude, sample_period=spec.sample_period,
              memory_length=spec.memory_length, eval_time=spec.eval_time)
    _, table = attenuation_medians(10, spec.seed, **kw)
    medians, _ = attenuation_medians(spec.draws, spec.seed + 1, **kw)
    header = ["sequence"] + [f"order_{o:g}" for o in TABLE1_ORDERS]
    writer.table("table1.csv", header, [[i + 1, *map(float, row)] for i, row in enumerate(table)])
    writer.table("table1_medians.csv", ["order", "median_abs"], [[float(o), float(v)] for o, v in zip(TABLE1_ORDERS, medians)])
    neg = [v for o, v in zip(TABLE1_ORDERS, medians) if o < 0]
    summary = {
        "amplitude": amplitude,
        "draws": spec.draws,
        "medians": dict(zip(map(float, TABLE1_ORDERS), map(float, medians))),
        "monotone_non_increasing": bool(np.all(np.diff(medians) <= 0)),
        "integration_below_0.01": bool(max(neg) < 0.01),
        "order_1.5_above_10": bool(medians[0] > 10),
    }
    return summary, {"table": table, "medians": medians}


def _table2(spec, writer, measured=None):
    if measured is None:
        clean = simulate_step_response(spec.model, spec.duration, spec.sample_period)
        amplitude = 0.0 if spec.amplitude is None else spec.amplitude
        measured = corrupt(clean, NoiseSpec(amplitude, spec.seed))
    problem = _problem(spec, measured)
    results = []
    for i in range(spec.seeds):
        cfg = default_pso_config(problem, seed=spec.seed + i, swarm_size=spec.swarm_size, iterations=spec.iterations)
        res = identify_full(problem, cfg, truth=spec.model)
        log.info("run %d: %s F=%.4g", i, res.model, res.fitness)
        results.append(res)
    header = ["alpha", "beta", "a1", "a2", "a3", "fitness"]
    rows = [[r.model.alpha, r.model.beta, r.model.a1, r.model.a2, r.model.a3, r.fitness] for r in results]
    writer.table("table2.csv", header, rows)
    summary = {
        "runs": [dict(r.model.as_dict(), fitness=r.fitness, error_pct=r.per_parameter_error_pct) for r in results],
    }
    return summary, {"results": results, "problem": problem}


def _figures(spec, writer):
    amplitude = 0.05 if spec.amplitude is None else spec.amplitude
    clean = simulate_step_response(spec.model, spec.duration, spec.sample_period)
    noise = generate_noise(len(clean), clean.sample_period, NoiseSpec(amplitude, spec.seed))
    writer.signal("fig1_step_response.csv", clean)
    writer.signal("fig2_noise.csv", noise)
    writer.signal("fig3_corrupted.csv", clean.with_samples(clean.samples + noise.samples))
    summary, tables = _table2(spec, writer, measured=clean)
    first = tables["results"][0]
    writer.table(
        "fig4_particles.csv",
        ["iteration", "particle", "alpha", "beta"],
        [[it, p, float(x[0]), float(x[1])] for it, pos in enumerate(first.trace) for p, x in enumerate(pos)],
    )
    writer.table("fig5_best_fitness.csv", ["iteration", "best_fitness"],
                 [[i + 1, float(f)] for i, f in enumerate(first.convergence_history)])
    writer.table("fig6_run_fitness.csv", ["run", "best_fitness"],
                 [[i + 1, float(r.fitness)] for i, r in enumerate(tables["results"])])
    return summary, tables


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run one canned experiment, writing CSV artifacts to ``spec.out_dir`` if set."""
    name = _validate(spec)
    writer = _Writer(spec.out_dir)
    if name == "section-4a":
        summary, tables = _section4(spec, writer, 0.0)
    elif name == "section-4b":
        summary, tables = _section4(spec, writer, 0.05 if spec.amplitude is None else spec.amplitude)
    elif name == "table-1":
        summary, tables = _table1(spec, writer)
    elif name == "figures":
        summary, tables = _figures(spec, writer)
    else:
        summary, tables = _table2(spec, writer)
    return ExperimentReport(name, summary, writer.paths, tables)
