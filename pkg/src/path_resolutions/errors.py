"""Exception types raised across the package."""
from __future__ import annotations


class GuardExceeded(ValueError):
    """An instance is larger than the configured guard allows."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"instance too large: {what} = {size} exceeds {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class InvalidInput(ValueError):
    """A precondition on the arguments does not hold."""


class NotAComplex(ArithmeticError):
    """Boundary maps do not square to zero."""


class MatchingError(RuntimeError):
    """A matching is not a valid acyclic Morse matching."""

    def __init__(self, message: str, cycle: list[object] | None = None) -> None:
        super().__init__(message)
        self.cycle = cycle or []


class StructureError(RuntimeError):
    """A structural property the construction relies on was falsified."""
