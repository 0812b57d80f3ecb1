"""Exception types shared across the package."""


class TanglieError(Exception):
    """Base class for all library errors."""


class InvalidDimension(TanglieError):
    """Vector or matrix size does not match the owning algebra."""


class NonPositiveDefinite(TanglieError):
    """Matrix offered as a metric is not symmetric positive-definite."""


class SingularMap(TanglieError):
    """Linear map required to be invertible is singular."""


class DegeneratePlane(TanglieError):
    """Sectional curvature requested for a degenerate (rank < 2) plane."""


class PreconditionViolated(TanglieError):
    """Documented precondition of an operation does not hold."""


class NotSymplecticInput(TanglieError):
    """Two-form fails the closedness or nondegeneracy requirements."""


class UnknownCatalogEntry(TanglieError):
    """Requested built-in problem name does not exist."""


class ParseError(TanglieError):
    """Problem file is not valid JSON or misses required fields."""


class ValidationError(TanglieError):
    """Problem file parsed but violates a structural invariant."""


class ExprError(TanglieError):
    """Vector expression could not be parsed.

    Carries the 0-based column where scanning failed.
    """

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column
