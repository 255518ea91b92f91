"""Exception types raised across the package."""


class PartitionMomentsError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(PartitionMomentsError, ValueError):
    pass


class InvalidSequence(PartitionMomentsError, ValueError):
    """A weighted sequence violates its invariants (e.g. 1 is missing)."""


class DomainError(PartitionMomentsError, ValueError):
    pass


class PoleError(PartitionMomentsError, ZeroDivisionError):
    """Evaluation requested exactly at a pole of a zeta function."""


class Unsupported(PartitionMomentsError, NotImplementedError):
    """The operation is not available for the given input."""


class UnsupportedFamily(Unsupported):
    pass


class NumericalFailure(PartitionMomentsError, ArithmeticError):
    pass


class TailBoundError(NumericalFailure):
    """The sequence truncation is too short for the requested accuracy."""

    def __init__(self, message, suggested_cutoff=None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff
