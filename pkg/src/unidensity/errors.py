"""Exception hierarchy shared by every module."""


class UnidensityError(Exception):
    """Base class for all errors raised by this package."""


class InvariantError(UnidensityError, ValueError):
    """An object was constructed in violation of its invariants."""


class StructuralError(UnidensityError, ValueError):
    """Set operands are incompatible, e.g. a disjoint union that overlaps."""


class ModeError(UnidensityError, TypeError):
    """Exact and real scalar modes were mixed without explicit conversion."""


class HorizonError(UnidensityError):
    """A computation needs a larger materialization window than allowed."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class QuadratureError(UnidensityError):
    """Numerical integration failed to reach the requested accuracy."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
