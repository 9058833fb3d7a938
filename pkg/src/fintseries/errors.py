"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`ToolkitError`. The
three intermediate classes map one-to-one onto CLI exit codes.
"""

from __future__ import annotations


class ToolkitError(Exception):
    exit_code = 1


class ValidationError(ToolkitError, ValueError):
    """Invalid parameters or configuration, detected before any computation."""

    exit_code = 2


class NonstationaryParametersError(ValidationError):
    pass


class DataError(ToolkitError, ValueError):
    """The input data cannot support the requested computation."""

    exit_code = 3


class InsufficientDataError(DataError):
    pass


class InsufficientScalesError(DataError):
    pass


class DegenerateSeriesError(DataError):
    pass


class DegenerateVariableError(DegenerateSeriesError):
    def __init__(self, row: int, message: str | None = None):
        self.row = row
        super().__init__(message or f"row {row} has zero variance")


class DegenerateTailError(DataError):
    pass


class DomainError(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeError(DataError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message)


class NumericError(ToolkitError, ArithmeticError):
    """A numerical kernel failed to converge or produced non-finite output."""

    exit_code = 4
