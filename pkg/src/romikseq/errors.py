"""Exception hierarchy shared by all modules."""


class RomikError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RomikError, ValueError):
    """An argument lies outside the domain of an operation."""


class UndefinedValuationError(DomainError):
    """The valuation of zero was requested."""


class PoleError(DomainError):
    """A hypergeometric lower parameter hits a pole inside the requested order."""


class NotInvertibleError(RomikError, ArithmeticError):
    """A series with zero constant term was inverted."""


class OutOfRangeError(RomikError, IndexError):
    """A coefficient outside the retained window of a truncated series was read."""


class InconsistencyError(RomikError, ArithmeticError):
    """Two computations that must agree did not, or an exact quantity was not integral."""


class IntegralityError(InconsistencyError):
    """A quantity that must be an integer turned out fractional."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GuardError(RomikError):
    """A requested range exceeds the configured computability guard."""


class UsageError(RomikError, ValueError):
    """Invalid parameters for a verifier or scanner."""


class PreconditionError(UsageError):
    """A hypothesis of a theorem check does not hold on the inspected range."""
