"""Exception types shared by all qinfo modules."""


class QinfoError(Exception):
    """Base class for all qinfo errors."""


class DimensionError(QinfoError):
    """Shapes or particle dimensions do not match."""


class ValidationError(QinfoError):
    """An object violates one of its defining invariants."""


class DomainError(QinfoError):
    """An argument is outside the operation's domain."""


class DegenerateInputError(QinfoError):
    """Input is degenerate (e.g. a zero vector where a state is expected)."""


class NotSpannableError(QinfoError):
    """A matrix lies outside the span of the given basis."""


class UnknownNameError(QinfoError, KeyError):
    """Lookup of a named state or gate failed."""


class OptimizationFailedError(QinfoError):
    """Optimization could not produce a finite result.

    Carries the best point seen so far (may be None if every probe
    was infeasible).
    """

    def __init__(self, message, best_params=None, best_value=None):
        super().__init__(message)
        self.best_params = best_params
        self.best_value = best_value
