"""Exception types shared across the package.

Separate classes (rather than bare ValueError/RuntimeError) let callers and
the CLI map failures to distinct exit codes.
"""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class OutOfDomainError(ValueError):
    """A request lies outside the mathematical domain of validity."""


class ConditioningError(RuntimeError):
    """A linear system is too ill-conditioned to solve reliably."""

    def __init__(self, msg, condition=None):
        super().__init__(msg)
        self.condition = condition


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or produced invalid output."""


class InfeasibleConstraintError(RuntimeError):
    """The requested discrepancy level cannot be attained.

    ``attainable`` holds the (lo, hi) range of reachable values.
    """

    def __init__(self, msg, attainable=None):
        super().__init__(msg)
        self.attainable = attainable


class CalibrationError(RuntimeError):
    """Series truncation calibration failed to meet the tolerance.

    ``best_rel_error`` is the smallest relative deviation achieved.
    """

    def __init__(self, msg, best_rel_error=None):
        super().__init__(msg)
        self.best_rel_error = best_rel_error


class DegenerateDataError(RuntimeError):
    """Input data carries no usable signal for the requested fit."""
