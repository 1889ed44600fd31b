"""Shared exception types."""


class ExactDomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class SingularPointError(ValueError):
    """A torus point or chamber position sits on a wall where the formula degenerates."""


class ResourceLimitError(ValueError):
    """A guarded enumeration was asked for a rank/size beyond its limit."""
