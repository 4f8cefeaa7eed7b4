"""Identification of fractional-order systems ``1/(a1 s^alpha + a2 s^beta + a3)``."""

from .errors import (
    ConfigError,
    DivergenceError,
    FracIdentError,
    InputError,
    MisalignmentError,
    ModelError,
    NoSolutionError,
    NumericalError,
    SingularSystemError,
    WindowError,
)
from .fraccalc import DifferintegralRequest, GlWeights, differintegrate, differintegrate_series, gl_weights
from .linear import (
    EquationSystem,
    LinearIdentConfig,
    build_equations,
    choose_shift_order,
    identify_coefficients,
    solve_coefficients,
)
from .noise import NoiseSpec, corrupt, generate_noise
from .pipeline import (
    PAPER_MODEL,
    ExperimentSpec,
    IdentificationProblem,
    IdentificationResult,
    fitness_of_candidate,
    identify_full,
    run_experiment,
)
from .pso import PsoConfig, SwarmResult
from .signal import SampledSignal
from .sim import FractionalModel, InputKind, simulate_response, simulate_step_response

__version__ = "0.1.0"
