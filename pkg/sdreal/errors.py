"""
Exception hierarchy for the sdreal package and the CLI exit codes tied to it.
"""
from typing import Optional

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_INTERNAL_ERROR = 2


class SdRealError(Exception):
    """Base class for every error raised on purpose by sdreal."""


class ExpressionSyntaxError(SdRealError, ValueError):
    """The expression text does not match the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position
        self.text = text


class RangeError(SdRealError, ValueError):
    """A rational lies outside [-1, 1]."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class PreconditionError(SdRealError, ValueError):
    """A precondition that can be decided on rationals does not hold."""

    def __init__(self, message: str, subexpression: str = ""):
        if subexpression:
            message = f"{message} in '{subexpression}'"
        super().__init__(message)
        self.subexpression = subexpression


class InvariantViolation(SdRealError, RuntimeError):
    """An oracle check failed; the computed digits are wrong."""


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the exit code the CLI reports for it."""
    if isinstance(error, (ExpressionSyntaxError, RangeError, PreconditionError)):
        return EXIT_USER_ERROR
    return EXIT_INTERNAL_ERROR
