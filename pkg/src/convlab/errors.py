"""Exception types shared across the library."""


class UsageError(ValueError):
    """An argument violated a documented precondition of the operation."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed, e.g. a rounding residue too large."""
