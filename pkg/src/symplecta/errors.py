"""Exception types shared across the package.

The CLI maps malformed payloads to exit code 1 and any :class:`SymplectaError`
raised by the library to exit code 2.
"""


class SymplectaError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(SymplectaError):
    """Shapes are inconsistent or a dimension is outside the supported range."""


class NotSymplecticError(SymplectaError):
    """A matrix required to be symplectic is not, within tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotPositiveDefiniteError(SymplectaError):
    """A matrix required to be symmetric positive definite is not."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class DegenerateBodyError(SymplectaError):
    """A convex body is flat, unbounded, or does not contain the origin."""


class DomainError(SymplectaError):
    """Semantically valid input violating a mathematical precondition."""

    def __init__(self, message, **payload):
        super().__init__(message)
        self.payload = dict(payload)


class NotQuantumPairError(DomainError):
    """An operation requiring a quantum polar pair received a non-pair."""


class ConvergenceError(SymplectaError):
    """An iterative solve stopped without reaching its target residual."""


class GridError(SymplectaError):
    """A sampled function's grid cannot support the requested operation."""


class InternalConsistencyError(SymplectaError):
    """Two routes that must agree mathematically disagreed numerically."""
