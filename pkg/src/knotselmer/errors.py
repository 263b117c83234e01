"""Exception types shared across the package."""


class KnotSelmerError(Exception):
    """Base class for all package errors."""


class RingError(KnotSelmerError, ArithmeticError):
    pass


class NotInvertibleError(RingError):
    """Raised when inverting a non-unit."""


class InexactDivisionError(RingError):
    """Raised when a quotient does not exist in the ring."""


class CapabilityError(RingError):
    """Raised when a ring layer does not support an operation (gcd, Smith form, ...)."""


class ReductionError(RingError):
    """Raised when no reduction map exists between two rings."""


class HenselError(RingError):
    """Raised when a Newton/Hensel lift has no valid starting point."""


class PresentationError(KnotSelmerError):
    pass


class RepresentationError(KnotSelmerError):
    pass


class AssumptionError(KnotSelmerError):
    """Raised when a structural hypothesis on the representation fails."""


class ParseError(KnotSelmerError):
    """Raised for malformed job files. Carries an optional line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingWitnessError(ParseError):
    pass
