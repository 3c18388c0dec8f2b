"""Exception types raised by toricwsr."""


class ToricError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(ToricError, ValueError):
    pass


class NotFullRank(ToricError, ValueError):
    pass


class DegenerateMatrix(ToricError, ZeroDivisionError):
    pass


class IndexOutOfRange(ToricError, IndexError):
    pass


class InvalidPair(ToricError, ValueError):
    """Raised when a characteristic pair is built from bad data.

    The offending conditions are kept on ``violations``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NoSmoothVertex(ToricError):
    pass


class NotInStandardPosition(ToricError, ValueError):
    pass


class GenerationFailed(ToricError, RuntimeError):
    pass


class CheckFailed(ToricError, AssertionError):
    """A computed identity that must hold did not; ``witness`` says where."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
