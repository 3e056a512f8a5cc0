"""Exception types shared across the package."""


class InputDomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class MinimalityError(InputDomainError):
    """A transposition set is not a minimal generating set (its edges are not a tree)."""


class CapabilityError(RuntimeError):
    """The requested computation exceeds a configured size or memory cap."""
