"""Exception hierarchy shared by every layer.

``ValidationError`` subclasses map to CLI exit code 2 and
``NumericalError`` subclasses to exit code 3.
"""

from __future__ import annotations


class SpectraBoundError(Exception):
    """Base class for all package errors."""


class ValidationError(SpectraBoundError, ValueError):
    """Input violates a structural precondition."""


class NumericalError(SpectraBoundError, ArithmeticError):
    """A numerical procedure failed to deliver its certificate."""


class NotIrreducible(ValidationError):
    pass


class InfeasibleShift(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class ZeroDegree(ValidationError):
    pass


class NotConnected(ValidationError):
    def __init__(self, message: str, components: int):
        super().__init__(message)
        self.components = components


class NotStronglyConnected(NotConnected):
    pass


class ParseError(ValidationError):
    """Malformed text input; carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int, source: str | None = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class NoConvergence(NumericalError):
    """Power iteration exhausted its budget.

    ``rho`` and ``residual`` hold the best estimate reached.
    """

    def __init__(self, message: str, rho: float, residual: float, iterations: int):
        super().__init__(message)
        self.rho = rho
        self.residual = residual
        self.iterations = iterations


class ToleranceConflict(NumericalError):
    """Numeric attainment and structural equality conditions disagree."""
