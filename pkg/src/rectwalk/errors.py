"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class AccuracyError(ArithmeticError):
    """A computation failed to reach its requested accuracy.

    ``estimate`` carries the best value obtained before giving up, or
    ``None`` when there is nothing meaningful to report.
    """

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate


class IntegrandError(AccuracyError):
    """The integrand returned NaN or infinity at an interior node."""


class ExtrapolationError(AccuracyError):
    """A refinement sequence is unsuitable for Richardson extrapolation."""
