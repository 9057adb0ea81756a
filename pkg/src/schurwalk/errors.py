"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class TruncationError(ArithmeticError):
    """A truncated computation would need terms beyond its cutoff."""
