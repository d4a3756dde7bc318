"""Exception hierarchy shared by every module."""


class PolyballError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(PolyballError, ValueError):
    """Malformed input: wrong dimensions, out-of-range letters, bad shapes."""


class UnsupportedShapeError(InvalidInputError):
    """Operation is only defined for a restricted family of shapes."""


class DomainError(PolyballError, ValueError):
    """Input is well formed but lies outside the region where a formula holds."""


class SingularMatrixError(DomainError):
    """Matrix is singular or too ill-conditioned to invert."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class CapacityError(PolyballError):
    """Requested truncation exceeds the configured dimension cap."""

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension
