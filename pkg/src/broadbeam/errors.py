"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised when a configuration value or file is invalid."""


class DimensionError(ValueError):
    """Raised when array shapes or lengths do not line up."""


class AggregationError(ValueError):
    """Raised when run records cannot be aggregated together."""
