"""Exception hierarchy.

Usage problems (bad inputs, violated model invariants) derive from
``ValueError``; numerical breakdowns (singular systems, divergent
simulations) derive from ``ArithmeticError``. The CLI maps the former to
exit code 1 and the latter to exit code 2.
"""


class FracIdentError(Exception):
    pass


class InputError(FracIdentError, ValueError):
    pass


class WindowError(InputError):
    """The memory window reaches before the start of the signal."""


class MisalignmentError(InputError):
    """An evaluation time does not sit on a sample instant."""


class EmptyResultError(InputError):
    pass


class ModelError(InputError):
    """A fractional model violates its structural invariants."""


class IntegerOrderError(InputError):
    pass


class ConfigError(InputError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NumericalError(FracIdentError, ArithmeticError):
    pass


class SingularSystemError(NumericalError):
    pass


class DivergenceError(NumericalError):
    pass


class NoSolutionError(NumericalError):
    pass
