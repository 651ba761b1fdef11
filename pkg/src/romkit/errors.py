"""Exception hierarchy.

Two families: ``ValidationError`` for bad inputs (CLI exit code 2) and
``NumericalError`` for failures that happen while computing (exit code 3).
"""


class RomError(Exception):
    """Base class for all romkit errors."""


class ValidationError(RomError, ValueError):
    """Invalid user input."""


class NumericalError(RomError, ArithmeticError):
    """A computation could not be carried out."""


class InvalidGridError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class InvalidDataError(ValidationError):
    pass


class InvalidBasisError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class InsufficientDataError(ValidationError):
    pass


class InvalidAbscissaError(ValidationError):
    pass


class UnsupportedError(ValidationError):
    pass


class ZeroNormError(NumericalError):
    pass


class LinearDependenceError(NumericalError):
    """Raised when a vector lies (numerically) in the span of a basis.

    ``index`` is the offending row when the failure comes from a batch.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateBasisError(NumericalError):
    pass


class IntegrationFailureError(NumericalError):
    pass
