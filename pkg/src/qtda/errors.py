"""Exception types shared across the package."""


class EmptyDimensionError(ValueError):
    """Raised when an operation needs simplices in a dimension that has none."""


class ResourceLimitError(RuntimeError):
    """Raised when a simulation would exceed the qubit budget."""


class DegenerateDataError(ValueError):
    """Raised when a dataset cannot support the requested computation."""
