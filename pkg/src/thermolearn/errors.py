"""Exception hierarchy shared by all modules."""


class ThermolearnError(Exception):
    """Base class for package errors."""


class ValidationError(ThermolearnError, ValueError):
    """Invalid parameter or configuration value.

    ``key`` names the offending parameter (a dotted path for config documents).
    """

    def __init__(self, message, key=None):
        super().__init__(message if key is None else f"{key}: {message}")
        self.message = message
        self.key = key


class DomainError(ThermolearnError, ValueError):
    """Argument outside the domain where a formula is defined (e.g. t < 0)."""


class RankDeficiencyError(ValidationError):
    """Regression design matrix is degenerate; ``pair`` names the collinear columns."""

    def __init__(self, message, pair):
        super().__init__(message, key="/".join(pair))
        self.pair = tuple(pair)


class ConvergenceError(ThermolearnError, RuntimeError):
    """A numerical procedure failed to converge."""
