"""Exception types shared across the package."""


class SqnfactError(Exception):
    """Base class for all library errors."""


class InvalidInputError(SqnfactError, ValueError):
    """An input violates a precondition (non-finite entries, negative values, arity)."""


class DimensionError(SqnfactError, ValueError):
    """Requested shapes or truncation sizes are incompatible."""


class InvalidExponentError(SqnfactError, ValueError):
    """Exponent outside the range an operation accepts."""


class SplitMismatchError(SqnfactError, ValueError):
    """Factor exponents do not satisfy sum(1/p_i) == 1/p."""


class InfeasibleDimensionError(SqnfactError, ValueError):
    """Inner dimension too small to factor the target exactly."""


class UnsupportedSplitError(SqnfactError, ValueError):
    """Split not handled by this operation (nonconvex per-factor exponent)."""


class UnsupportedExponentError(SqnfactError, ValueError):
    """Exponent outside the supported range of the proximal kernel."""


class InvalidProblemError(SqnfactError, ValueError):
    """Completion problem is ill-posed (e.g. no observed entries)."""


class NumericalFailureError(SqnfactError, RuntimeError):
    """A solver stopped making progress; carries the objective trace."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = [] if trace is None else list(trace)


class MatrixFormatError(SqnfactError, ValueError):
    """A matrix file could not be parsed; the message names the offending line."""
