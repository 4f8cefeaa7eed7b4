r"""Coefficient identification for known fractional orders.

Dividing the transfer function through by :math:`s^n`, with :math:`n` the
smallest integer above :math:`\alpha`, and integrating the step-response
relation twice more gives three equations in which every differintegral of
the measured output is a fractional *integral*:

.. math::

    D^{-n-r} u = a_1 D^{\alpha-n-r} c + a_2 D^{\beta-n-r} c + a_3 D^{-n-r} c,
    \qquad r = 0, 1, 2.

Integration averages zero-mean measurement noise away, which is what keeps
the coefficients accurate on corrupted data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, IntegerOrderError, SingularSystemError
from .fraccalc import DifferintegralRequest, differintegrate
from .signal import SampledSignal

CONDITION_CAP = 1e12


@dataclass(frozen=True)
class LinearIdentConfig:
    eval_time: float = 10.0
    memory_length: float = 10.0
    sample_period: float = 0.001
    shift_order: int | None = None  # None: smallest integer above alpha

    def resolve_shift(self, alpha: float) -> int:
        if self.shift_order is None:
            return choose_shift_order(alpha)
        if not self.shift_order > alpha:
            raise InputError(f"shift_order {self.shift_order} must exceed alpha={alpha}")
        return int(self.shift_order)


@dataclass(frozen=True, eq=False)
class EquationSystem:
    matrix: np.ndarray  # rows r = 0, 1, 2; columns (alpha-n-r, beta-n-r, -n-r)
    rhs: np.ndarray
    orders: tuple[tuple[float, float, float], ...] = ()


def choose_shift_order(alpha: float) -> int:
    """Smallest integer strictly above ``alpha`` (requires non-integer alpha > 0)."""
    if not alpha > 0:
        raise InputError(f"alpha must be > 0, got {alpha}")
    if float(alpha).is_integer():
        raise IntegerOrderError(f"alpha={alpha} is an integer; the shift order is undefined")
    return math.floor(alpha) + 1


def build_equations(
    output: SampledSignal, alpha: float, beta: float, cfg: LinearIdentConfig
) -> EquationSystem:
    if not alpha > beta > 0:
        raise InputError(f"need alpha > beta > 0, got alpha={alpha}, beta={beta}")
    if not math.isclose(output.sample_period, cfg.sample_period, rel_tol=1e-9):
        raise InputError(
            f"signal period {output.sample_period} does not match configured {cfg.sample_period}"
        )
    n = cfg.resolve_shift(alpha)
    step = SampledSignal.constant(1.0, len(output), output.sample_period, output.start_time)

    def d(signal, order):
        return differintegrate(signal, DifferintegralRequest(order, cfg.eval_time, cfg.memory_length))

    orders = tuple((alpha - n - r, beta - n - r, float(-n - r)) for r in range(3))
    matrix = np.array([[d(output, o) for o in row] for row in orders])
    # The input is integrated with the same numerics so discretisation bias cancels.
    rhs = np.array([d(step, float(-n - r)) for r in range(3)])
    return EquationSystem(matrix, rhs, orders)


def gauss_solve(a, b) -> np.ndarray:
    """Solve ``a x = b`` by Gaussian elimination with partial pivoting."""
    a = np.array(a, dtype=np.float64)
    x = np.array(b, dtype=np.float64)
    n = a.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            raise SingularSystemError("matrix is singular")
        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]
        for i in range(k + 1, n):
            f = a[i, k] / a[k, k]
            a[i, k:] -= f * a[k, k:]
            x[i] -= f * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    return x


def solve_coefficients(system: EquationSystem, condition_cap: float = CONDITION_CAP):
    matrix = np.asarray(system.matrix, dtype=np.float64)
    if not np.all(np.isfinite(matrix)):
        raise SingularSystemError("matrix has non-finite entries")
    cond = np.linalg.cond(matrix, 1) if np.any(matrix) else math.inf
    if not cond < condition_cap:
        raise SingularSystemError(f"condition number {cond:.3g} exceeds cap {condition_cap:.3g}")
    a1, a2, a3 = gauss_solve(matrix, system.rhs)
    return float(a1), float(a2), float(a3)


def identify_coefficients(output: SampledSignal, alpha: float, beta: float, cfg: LinearIdentConfig):
    """Estimate ``(a1, a2, a3)`` from a step response with known orders."""
    return solve_coefficients(build_equations(output, alpha, beta, cfg))
