"""Exception types shared across the package."""


class PowerLindleyError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PowerLindleyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketError(PowerLindleyError, ValueError):
    """A root bracket does not contain a sign change."""


class AccuracyError(PowerLindleyError, RuntimeError):
    """Quadrature could not meet its tolerance within the subdivision budget.

    Carries the best available estimate and a bound on its error so callers
    can degrade gracefully instead of silently accepting a bad value.
    """

    def __init__(self, message, estimate=float("nan"), error_bound=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class OptimizationError(PowerLindleyError, RuntimeError):
    """The minimizer could not make progress (persistently non-finite values)."""


class NormalizationError(PowerLindleyError, RuntimeError):
    """A perturbation function could not be normalized to unit sup."""


class FitError(PowerLindleyError, RuntimeError):
    """Every optimizer start failed for a fitting problem."""


class ParseError(PowerLindleyError, ValueError):
    """A frequency-table file could not be parsed."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
