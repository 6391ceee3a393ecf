"""Exception types raised by the package.

Every precondition violation raises a subclass of :class:`UdeedError` with a
message naming the offending argument, so callers (including the CLI) can
catch one type and report a clean diagnostic.
"""


class UdeedError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(UdeedError):
    """Two vectors or arrays that must share a dimension do not."""


class DataFormatError(UdeedError):
    """A dataset file or stream is malformed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NonFiniteLossError(UdeedError):
    """The training loss became NaN or infinite.

    Carries the 0-based descent step at which the value was produced.
    """

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (at descent step {step})")
        self.step = step


class SingleClassWarning(UserWarning):
    """A labeled set contains one class only; training degenerates."""
