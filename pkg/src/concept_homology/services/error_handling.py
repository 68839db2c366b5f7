"""
Error handling and timing helpers for concept-homology.

This module provides the exception hierarchy shared by every layer and a
small context manager that logs the duration of pipeline stages.
"""

from datetime import datetime, timezone
from enum import Enum

from loguru import logger

UTC = timezone.utc


class ConceptHomologyError(Exception):
    """Base exception for concept-homology."""

    pass


class ArgumentError(ConceptHomologyError, ValueError):
    """Invalid argument passed to a library operation."""

    pass


class ConfigurationError(ArgumentError):
    """Configuration related errors."""

    pass


class StructuralError(ConceptHomologyError):
    """A simplicial invariant does not hold."""

    pass


class DataError(ConceptHomologyError):
    """Input data could not be read or is unusable."""

    pass


class ParseError(DataError):
    """A cell could not be parsed as a finite real number."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class MissingDataError(DataError):
    """A required cell is empty."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class IntervalNotFoundError(ConceptHomologyError, LookupError):
    """The requested persistence interval is not part of the barcode."""

    pass


class ErrorSeverity(Enum):
    """Error severity levels."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


def determine_severity(error: Exception) -> ErrorSeverity:
    """Map an exception to the severity used when it is logged."""
    if isinstance(error, StructuralError):
        return ErrorSeverity.CRITICAL
    elif isinstance(error, (DataError, OSError)):
        return ErrorSeverity.ERROR
    elif isinstance(error, ArgumentError):
        return ErrorSeverity.WARNING
    else:
        return ErrorSeverity.ERROR


class OperationTimer:
    """Context manager for timing operations."""

    def __init__(self, operation: str, component: str, **kwargs):
        """Initialize operation timer."""
        self.operation = operation
        self.component = component
        self.kwargs = kwargs
        self.start_time: datetime | None = None
        self.end_time: datetime | None = None

    def __enter__(self) -> "OperationTimer":
        """Start timing."""
        self.start_time = datetime.now(UTC)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """End timing and log."""
        self.end_time = datetime.now(UTC)
        duration = self.elapsed()
        extra = " ".join(f"{key}={value}" for key, value in self.kwargs.items())

        if exc_type is None:
            logger.debug(
                f"{self.component}:{self.operation} completed in {duration:.3f}s {extra}".rstrip()
            )
        else:
            severity = determine_severity(exc_val)
            logger.log(
                severity.value,
                f"{self.component}:{self.operation} failed after {duration:.3f}s: {exc_val}",
            )

    def elapsed(self) -> float:
        """Get elapsed time."""
        if self.start_time is None:
            return 0.0
        end_time = self.end_time or datetime.now(UTC)
        return (end_time - self.start_time).total_seconds()
