"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An operation would exceed a configured size or term budget."""


class NumericalCollapseError(RuntimeError):
    """Every term of a generator fell below the drop tolerance."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed (e.g. a non-real density coefficient)."""
