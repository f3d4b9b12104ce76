"""
Custom exception classes for the allocation app.
"""

from django.core.management.base import CommandError

EXIT_FAILURE = 1
EXIT_USAGE = 2


class AllocationError(Exception):
    """Base exception class for the allocation app."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_FAILURE,
    ):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class InvalidInputError(AllocationError):
    """Raised when an operation receives malformed or out-of-range input."""

    def __init__(self, message: str = "Invalid input"):
        super().__init__(message, EXIT_USAGE)


class InfeasibleQuotaError(AllocationError):
    """Raised when there are fewer subcarriers than users."""

    def __init__(self, message: str = "Fewer subcarriers than users"):
        super().__init__(message, EXIT_USAGE)


class FixtureNotFoundError(AllocationError):
    """Raised for an unknown fixture name."""

    def __init__(self, message: str = "Unknown fixture"):
        super().__init__(message, EXIT_USAGE)


class MethodInapplicableError(AllocationError):
    """Raised when the linear method is asked to solve a non-linear-case instance."""

    def __init__(self, message: str = "Method not applicable to this instance"):
        super().__init__(message)


class NumericalFailureError(AllocationError):
    """Raised when a solver cannot produce a finite answer."""

    def __init__(
        self,
        message: str = "Numerical failure",
        bracket: tuple[float, float] | None = None,
    ):
        self.bracket = bracket
        if bracket is not None:
            message = f"{message} (bracket [{bracket[0]:.6g}, {bracket[1]:.6g}])"
        super().__init__(message)


class UndefinedMetricError(AllocationError):
    """Raised when a metric is undefined for its input (e.g. all rates zero)."""

    def __init__(self, message: str = "Metric undefined"):
        super().__init__(message)


class ScenarioParseError(AllocationError):
    """Raised when a scenario document cannot be parsed or validated."""

    def __init__(self, message: str, key: str, line: int | None = None):
        self.key = key
        self.line = line
        if line is None:
            text = f"{key}: {message}"
        else:
            text = f"line {line}: {key}: {message}"
        super().__init__(text, EXIT_USAGE)


def as_command_error(exc: AllocationError) -> CommandError:
    """Translate an app error into a management command failure."""
    return CommandError(exc.message, returncode=exc.exit_code)
