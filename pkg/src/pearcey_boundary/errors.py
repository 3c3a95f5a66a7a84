"""Exception hierarchy shared by the numerical modules."""


class PearceyError(Exception):
    """Base class for all errors raised by this package."""


class InvalidKernelError(PearceyError, ValueError):
    """The exponent polynomial does not decay at +/- infinity."""


class AccuracyError(PearceyError):
    """A numerical target could not be met; ``best`` holds the best estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DomainError(PearceyError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class RangeError(PearceyError, OverflowError):
    """Result would overflow double precision."""


class NotFoundError(PearceyError):
    """Fewer zeros than requested were located; ``found`` lists those that were."""

    def __init__(self, message, found=()):
        super().__init__(message)
        self.found = list(found)


class DoubleZeroError(PearceyError):
    """The first x-derivative vanishes at a zero, so the boundary slope is undefined."""


class BlowUpError(PearceyError):
    """A trace was stopped early; ``trajectory`` holds the samples computed so far."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class SingularityError(BlowUpError):
    """The Abel equation reached its pole at f = 0."""
