"""Exception hierarchy. The CLI maps each class onto a fixed exit code."""


class QsuffError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidInput(QsuffError, ValueError):
    """Malformed matrix, mismatched dimensions or out-of-range parameter."""

    exit_code = 3


class InvalidState(InvalidInput):
    """Matrix is not an invertible density matrix."""


class DomainError(InvalidInput):
    """Scalar function undefined on part of a spectrum."""


class NumericalDegeneracy(InvalidInput):
    """A matrix that must be invertible is numerically singular."""


class ClosureDiverged(InvalidInput):
    """Algebra closure did not stabilise within the iteration cap."""


class ResourceLimit(QsuffError):
    """Requested tensor power exceeds the configured dimension cap."""

    exit_code = 4


class InternalInconsistency(QsuffError):
    """Theoretically equivalent criteria disagree at the working tolerance."""

    exit_code = 5


class ParseError(QsuffError, ValueError):
    """Problem file is not well-formed."""

    exit_code = 2
