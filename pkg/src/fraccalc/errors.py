"""Exception types raised by the fraccalc operators."""


class FracCalcError(Exception):
    """Base class for all library errors."""


class DomainError(FracCalcError, ValueError):
    """An argument lies outside the domain of the operator."""


class ResolutionError(FracCalcError, ValueError):
    """The sampling grid is too coarse for the requested stencil."""


class AccuracyError(FracCalcError, ArithmeticError):
    """A series could not reach the requested accuracy within its budget."""


class SingularStepError(FracCalcError, ZeroDivisionError):
    """A time-stepping scheme hit a zero denominator."""
