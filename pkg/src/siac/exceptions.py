"""Exception types raised by the filtering library."""


class SIACError(Exception):
    """Base class for library errors."""


class InvalidInputError(SIACError, ValueError):
    """Raised when input data or parameters violate a precondition."""


class DomainError(SIACError, ValueError):
    """Raised when a point lies outside the domain of a non-periodic interpolant."""


class DegenerateKernelError(SIACError, ArithmeticError):
    """Raised when the kernel coefficient system is singular or ill-conditioned."""


class UnsupportedConfigurationError(SIACError, ValueError):
    """Raised for kernel configurations an operation does not handle."""
