"""Exception hierarchy shared by all circident modules."""


class CircidentError(Exception):
    """Base class for all library-specific errors."""


class ParameterError(CircidentError, ValueError):
    """A parameter vector violates its family's parameter space."""


class DomainError(CircidentError, ValueError):
    """An input is outside the supported envelope of an operation."""


class NumericError(CircidentError, RuntimeError):
    """A numeric procedure failed to reach its accuracy contract.

    ``achieved`` carries the best error estimate reached before giving up,
    when one is available.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ExhaustionError(NumericError):
    """A bounded search ran out of budget.

    ``partial`` carries whatever qualifying results were found before the
    budget was exhausted.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
