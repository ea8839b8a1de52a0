"""Exception hierarchy shared by every module of the package."""


class AfmError(Exception):
    """Base class for all package errors."""


class DomainError(AfmError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NumericalError(AfmError, ArithmeticError):
    """A numerical procedure failed (non-real intermediate, iteration failure)."""


class NoBoundState(AfmError):
    """The requested level is not bound (no real, strictly negative energy)."""


class ConvergenceError(NumericalError):
    """A numerical solver did not reach its stated tolerance."""


class UnsupportedLambda(AfmError, ValueError):
    """The power lambda lies in a range where no branch prescription exists."""


class EmptySum(AfmError):
    """No level qualified for a chi-square style sum."""


class SingularFit(NumericalError):
    """A least-squares fit is not identifiable from the supplied samples."""
