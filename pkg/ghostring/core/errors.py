"""
Exception types shared across GhostRing.
"""

from typing import Any, Optional


class GhostRingError(Exception):
    """Base class for all GhostRing errors."""


class NotInRingError(GhostRingError, ValueError):
    """A triple or vector does not lie in the ring it was claimed to lie in."""


class BudgetExceeded(GhostRingError):
    """A search or closure ran past its element/node budget."""

    def __init__(self, message: str, size: int = 0, frontier: int = 0):
        super().__init__(message)
        self.size = size
        self.frontier = frontier


class WindowTooSmall(GhostRingError, ValueError):
    """The finite window cannot host the punctured indices an operation needs."""


class VerificationFailure(GhostRingError, AssertionError):
    """An asserted property failed; carries the offending counterexample."""

    def __init__(self, check: str, counterexample: Optional[Any] = None):
        message = f"Check '{check}' failed"
        if counterexample is not None:
            message += f": {counterexample!r}"
        super().__init__(message)
        self.check = check
        self.counterexample = counterexample
