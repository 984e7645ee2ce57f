"""Exception types shared across the package."""

from .hypermatrix import SizeGuardError


class IdentityFailure(AssertionError):
    """A verified identity did not hold; this always means a bug."""


__all__ = ["IdentityFailure", "SizeGuardError"]
