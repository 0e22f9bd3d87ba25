"""
utils/errors.py
Exception hierarchy and process exit codes.
"""

from typing import Optional

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_RESOURCE = 3


class AutomatonError(ValueError):
    """Base class for every error raised by the library."""

    exit_code = EXIT_INPUT


class InputError(AutomatonError):
    """
    Malformed input: unknown identifiers, alphabet mismatches, syntax errors.

    Args:
        message: Human-readable cause.
        line: 1-based line number in the parsed text, if known.
        column: 1-based column number in the parsed text, if known.
    """

    exit_code = EXIT_INPUT

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class PreconditionError(AutomatonError):
    """A hypothesis of a decision procedure does not hold for the given input."""

    exit_code = EXIT_PRECONDITION

    def __init__(self, hypothesis: str, message: str):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}: {message}")


class ResourceLimitError(RuntimeError):
    """A configured resource limit (see utils.config.LIMITS) was exceeded."""

    exit_code = EXIT_RESOURCE

    def __init__(self, limit: str, value: int):
        self.limit = limit
        self.value = value
        super().__init__(f"resource limit '{limit}' exceeded ({value})")
