"""Exception types shared across the package."""

from __future__ import annotations


class PebblingError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(PebblingError, ValueError):
    """A caller-supplied parameter is malformed or out of range."""


class NotATreeError(InvalidParameterError):
    """A tree-only routine was handed a graph with a cycle."""


class InternalInvariantError(PebblingError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ResourceLimitError(PebblingError):
    """A computation exceeded its configured budget.

    When a search is abandoned partway, `lo` and `hi` carry the best known
    bracket on the quantity being computed (either may be None).
    """

    def __init__(self, message: str, lo: int | None = None, hi: int | None = None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
