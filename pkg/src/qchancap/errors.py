"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An object or argument violates one of the library's invariants
    (non-Hermitian state, non-trace-preserving Kraus set, bad normalization, ...)."""


class DimensionMismatchError(ValidationError):
    """Operands have incompatible shapes or factor dimensions."""


class SizeCapError(ValidationError):
    """A request exceeds the dense desk-scale size limits."""
