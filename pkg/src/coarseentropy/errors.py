"""Exception types shared across the package.

Every deliberate failure mode gets its own class so callers (and the CLI)
can map errors to exit codes without string matching.
"""

__all__ = [
    "CoarseEntropyError",
    "UnknownPointError",
    "BudgetExceededError",
    "CapExceededError",
    "InvalidInputError",
    "NotDistancePreservingError",
]


class CoarseEntropyError(Exception):
    """Base class for all package errors."""


class UnknownPointError(CoarseEntropyError):
    """A point reference does not belong to the space it was used with."""


class BudgetExceededError(CoarseEntropyError):
    """A query on a lazily generated space left its finite window.

    Generated spaces are infinite; each handle carries an explicit budget
    (window).  Rather than silently truncating, any query whose answer
    would depend on points outside the window raises this error.
    """


class CapExceededError(CoarseEntropyError):
    """An enumeration grew past its configured cap.

    Carries ``partial`` = the count reached when enumeration stopped.
    """

    def __init__(self, message: str, partial: int = 0):
        super().__init__(message)
        self.partial = partial


class InvalidInputError(CoarseEntropyError):
    """Malformed construction input (bad edge list, bad schedule, ...)."""


class NotDistancePreservingError(CoarseEntropyError):
    """A mapping failed the distance-preservation check on a used pair."""
