"""Exception types shared across the package."""


class InvalidStateError(ValueError):
    """A state object violates its numerical invariants beyond tolerance."""


class DomainError(ValueError):
    """A scalar argument lies outside its mathematical domain."""


class DimensionMismatchError(ValueError):
    """Operators that must share a Hilbert space have different dimensions."""
