"""Exception hierarchy."""


class EiweError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(EiweError, ValueError):
    """An input violates a documented precondition."""


class NumericalFailure(EiweError, ArithmeticError):
    """A numerical routine failed or produced an unphysical result."""


class TruncationError(NumericalFailure):
    """The Fock cutoff is too small for the requested accuracy."""

    def __init__(self, message, defect):
        super().__init__(message)
        self.defect = defect


class DegenerateOutcome(NumericalFailure):
    """A measurement outcome has vanishing probability."""
