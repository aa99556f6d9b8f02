"""Exception types shared by all modules.

The CLI maps every subclass of :class:`SylgalError` to exit code 1.
"""


class SylgalError(Exception):
    """Base class for domain errors."""


class InvalidArguments(SylgalError, ValueError):
    pass


class UnsupportedDimension(SylgalError):
    pass


class UnsupportedField(SylgalError):
    pass


class UnsupportedSize(SylgalError):
    pass


class BudgetExhausted(SylgalError):
    """Raised when a search runs out of time.

    ``progress`` holds whatever was found before the deadline so callers can
    report partial results.
    """

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress if progress is not None else {}
