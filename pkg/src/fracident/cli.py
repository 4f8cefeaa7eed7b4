"""Command-line front end.

Every subcommand accepts ``--config FILE`` (flat ``key = value`` lines named
after the long flags; command-line flags win) and ``--seed``. The effective
configuration is echoed to stderr, in config-file syntax, before any work
starts. Exit codes: 0 success, 1 usage or configuration error, 2 numerical
failure.
"""

from __future__ import annotations

import argparse
import logging
import secrets
import sys
from pathlib import Path

from .errors import ConfigError, InputError, NumericalError
from .fraccalc import DifferintegralRequest, differintegrate
from .io import format_float, read_config, read_signal, signal_to_csv, write_signal, write_table
from .linear import LinearIdentConfig, build_equations, solve_coefficients
from .noise import NoiseSpec, corrupt
from .pipeline import (
    PAPER_MODEL,
    ExperimentSpec,
    IdentificationProblem,
    default_pso_config,
    identify_full,
    run_experiment,
)
from .sim import FractionalModel, InputKind, simulate_response

EXIT_USAGE = 1
EXIT_NUMERICAL = 2

REPRODUCIBLE = ("section-4a", "section-4b", "table-1", "table-2", "figures")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p):
    p.add_argument("--config", metavar="FILE", help="flat key = value file; flags override it")
    p.add_argument("--seed", type=int, help="random seed (fresh one drawn and printed if omitted)")
    p.add_argument("-v", "--verbose", action="store_true")


def _model_flags(p):
    g = p.add_argument_group("model")
    for name in ("a1", "a2", "a3", "alpha", "beta"):
        g.add_argument(f"--{name}", type=float, default=getattr(PAPER_MODEL, name))


def _window_flags(p, time=10.0, memory=10.0):
    p.add_argument("--time", type=float, default=time, help="evaluation instant t [s]")
    p.add_argument("--memory", type=float, default=memory, help="memory length L [s]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracident", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="simulate a model's response and write time,value CSV")
    _common(p)
    _model_flags(p)
    p.add_argument("--dur", type=float, default=10.0)
    p.add_argument("--period", type=float, default=0.001)
    p.add_argument("--input", choices=[k.value for k in InputKind], default="unit_step")
    p.add_argument("--out", default="-", help="output CSV (default stdout)")

    p = sub.add_parser("corrupt", help="add seeded uniform noise to a signal")
    _common(p)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--amplitude", type=float, default=0.05)

    p = sub.add_parser("diffint", help="Grunwald-Letnikov differintegral of a CSV signal")
    _common(p)
    p.add_argument("input")
    p.add_argument("--order", type=float, required=True)
    _window_flags(p, time=None, memory=None)

    p = sub.add_parser("identify-coeffs", help="solve for a1, a2, a3 with known orders")
    _common(p)
    p.add_argument("input")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--shift-order", type=int)
    _window_flags(p)
    p.add_argument("--out", help="write the equation system as CSV")

    p = sub.add_parser("identify-full", help="identify orders and coefficients with PSO")
    _common(p)
    p.add_argument("input")
    p.add_argument("--alpha-range", type=float, nargs=2, default=(2.0, 2.4))
    p.add_argument("--beta-range", type=float, nargs=2, default=(0.7, 1.1))
    p.add_argument("--swarm-size", type=int, default=10)
    p.add_argument("--iterations", type=int, default=40)
    p.add_argument("--c1", type=float, default=1.4)
    p.add_argument("--c2", type=float, default=1.4)
    p.add_argument("--inertia-start", type=float, default=0.9)
    p.add_argument("--inertia-end", type=float, default=0.4)
    p.add_argument("--velocity-init", type=float, default=0.2, help="initial velocities uniform in [-v, v]")
    p.add_argument("--fitness-period", type=float, default=0.05)
    p.add_argument("--horizon", type=float, help="fitness horizon [s] (default: whole record)")
    _window_flags(p)
    p.add_argument("--truth", type=float, nargs=5, metavar=("A1", "A2", "A3", "ALPHA", "BETA"))
    p.add_argument("--history-out", help="per-iteration best fitness CSV")
    p.add_argument("--out", help="identified model CSV")

    p = sub.add_parser("reproduce", help="regenerate a published experiment as CSV files")
    _common(p)
    p.add_argument("experiment", choices=REPRODUCIBLE)
    p.add_argument("--out-dir", help="default: ./reproduce-<experiment>")
    p.add_argument("--seeds", type=int, default=10, help="PSO runs for table-2/figures")
    p.add_argument("--amplitude", type=float, help="noise half-width (experiment default if omitted)")
    p.add_argument("--draws", type=int, default=100, help="noise records for the table-1 medians")
    p.add_argument("--swarm-size", type=int, default=10)
    p.add_argument("--iterations", type=int, default=40)
    return parser


def _config_argv(path) -> list[str]:
    argv = []
    for key, value in read_config(path).items():
        argv.append(f"--{key}")
        argv.extend(value.replace(",", " ").split())
    return argv


def parse_args(argv):
    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and not argv[0].startswith("-"):
        argv = [argv[0], *_config_argv(known.config), *argv[1:]]
    return build_parser().parse_args(argv)


def _echo_config(args, out):
    out.write(f"# effective configuration: {args.command}\n")
    for key, value in sorted(vars(args).items()):
        if key in ("command", "config"):
            continue
        if isinstance(value, (list, tuple)):
            value = " ".join(map(str, value))
        out.write(f"# {key.replace('_', '-')} = {value}\n")
    out.flush()


def _model(args) -> FractionalModel:
    return FractionalModel(args.a1, args.a2, args.a3, args.alpha, args.beta)


def cmd_simulate(args):
    signal = simulate_response(_model(args), InputKind(args.input), args.dur, args.period)
    if args.out == "-":
        sys.stdout.write(signal_to_csv(signal))
    else:
        write_signal(signal, args.out)


def cmd_corrupt(args):
    signal = read_signal(args.input)
    write_signal(corrupt(signal, NoiseSpec(args.amplitude, args.seed)), args.output)


def cmd_diffint(args):
    signal = read_signal(args.input)
    t = signal.end_time if args.time is None else args.time
    memory = t - signal.start_time if args.memory is None else args.memory
    if memory <= 0:
        # order-0 evaluation at the very first sample needs no history
        memory = signal.sample_period / 2
    print(format_float(differintegrate(signal, DifferintegralRequest(args.order, t, memory))))


def _linear_cfg(args, signal):
    return LinearIdentConfig(args.time, args.memory, signal.sample_period, getattr(args, "shift_order", None))


def cmd_identify_coeffs(args):
    signal = read_signal(args.input)
    system = build_equations(signal, args.alpha, args.beta, _linear_cfg(args, signal))
    a1, a2, a3 = solve_coefficients(system)
    if args.out:
        write_table(
            args.out,
            ["row", "d_alpha", "d_beta", "d_dc", "rhs"],
            [[r, *map(float, system.matrix[r]), float(system.rhs[r])] for r in range(3)],
        )
    for name, value in zip(("a1", "a2", "a3"), (a1, a2, a3)):
        print(f"{name},{format_float(value)}")


def cmd_identify_full(args):
    signal = read_signal(args.input)
    problem = IdentificationProblem(
        signal,
        alpha_range=tuple(args.alpha_range),
        beta_range=tuple(args.beta_range),
        linear_cfg=_linear_cfg(args, signal),
        fitness_sample_period=args.fitness_period,
        fitness_horizon=signal.end_time if args.horizon is None else args.horizon,
    )
    v = args.velocity_init
    cfg = default_pso_config(
        problem,
        seed=args.seed,
        swarm_size=args.swarm_size,
        iterations=args.iterations,
        c1=args.c1,
        c2=args.c2,
        inertia_start=args.inertia_start,
        inertia_end=args.inertia_end,
        velocity_init_bounds=((-v, v), (-v, v)),
    )
    truth = FractionalModel(*args.truth) if args.truth else None
    result = identify_full(problem, cfg, truth)
    rows = [[k, v] for k, v in result.model.as_dict().items()] + [["fitness", result.fitness]]
    for k, value in rows:
        print(f"{k},{format_float(value)}")
    if result.per_parameter_error_pct:
        for k, value in result.per_parameter_error_pct.items():
            print(f"error_pct_{k},{format_float(value)}")
    if args.out:
        write_table(args.out, ["parameter", "value"], rows)
    if args.history_out:
        write_table(args.history_out, ["iteration", "best_fitness"],
                    [[i + 1, float(f)] for i, f in enumerate(result.convergence_history)])


def cmd_reproduce(args):
    out_dir = Path(args.out_dir or f"reproduce-{args.experiment}")
    spec = ExperimentSpec(
        args.experiment, out_dir=out_dir, seed=args.seed, seeds=args.seeds,
        amplitude=args.amplitude, draws=args.draws,
        swarm_size=args.swarm_size, iterations=args.iterations,
    )
    report = run_experiment(spec)
    for path in report.artifacts:
        print(path)


COMMANDS = {
    "simulate": cmd_simulate,
    "corrupt": cmd_corrupt,
    "diffint": cmd_diffint,
    "identify-coeffs": cmd_identify_coeffs,
    "identify-full": cmd_identify_full,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        if args.seed is None:
            args.seed = secrets.randbits(63)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        _echo_config(args, sys.stderr)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
