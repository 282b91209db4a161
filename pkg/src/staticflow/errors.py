"""Exception types raised by the geometry, flow and expansion code."""


class StaticFlowError(ValueError):
    """Base class for all domain errors in this package."""


class GridMismatchError(StaticFlowError):
    """Two profiles live on different radial grids."""


class SignatureError(StaticFlowError):
    """A metric coefficient is non-positive somewhere."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class LapseError(StaticFlowError):
    """The lapse function is non-positive somewhere."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(StaticFlowError):
    """The grid leaves the region where a fixture is defined."""


class StabilityError(StaticFlowError):
    """A time step violates the explicit stability bound."""


class NonFiniteError(StaticFlowError):
    """A computed derivative is NaN or infinite."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateSystemError(StaticFlowError):
    """The order-by-order linear system of the boundary expansion is singular."""
