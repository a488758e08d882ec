"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    """An input violates an operation's precondition."""


class UnsupportedClassification(ValueError):
    """The requested construction does not exist for this parameter class."""


class ResourceLimit(RuntimeError):
    """A requested computation exceeds the configured size limits."""
