"""Exception types shared across the package."""


class KloosterError(Exception):
    """Base class for all package errors."""


class FieldConstructionError(KloosterError, ValueError):
    """Invalid field parameters (wrong degree, reducible modulus, ...)."""


class DomainError(KloosterError, ValueError):
    """An argument is outside the domain of the operation."""


class ConsistencyError(KloosterError, RuntimeError):
    """An internal exact identity failed; indicates a computation bug."""


class CapacityError(KloosterError, RuntimeError):
    """The requested computation exceeds the configured work limit."""
