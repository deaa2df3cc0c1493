"""Exception hierarchy shared by all modules."""


class CloningError(Exception):
    """Base class for every error raised by probclone."""


class DomainError(CloningError, ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleMapError(CloningError):
    """Prescribed inputs and outputs have different Gram matrices."""


class DegeneracyError(CloningError):
    """Prescribed inputs are (numerically) linearly dependent."""


class FeasibilityError(CloningError):
    """No cloning machine exists at the requested success rates."""


class SingularBoundError(CloningError, ZeroDivisionError):
    """The average-rate bound has a vanishing denominator."""


class UnsupportedPriorsError(CloningError):
    """A closed form was requested for priors it was not derived for."""


class InternalConsistencyError(CloningError, RuntimeError):
    """A quantity that a prior check guarantees turned out inconsistent."""
