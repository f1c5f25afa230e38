"""Exception hierarchy shared by all modules."""


class WicksError(Exception):
    """Base class for all errors raised by this package."""


class MalformedWord(WicksError, ValueError):
    """A letter occurs a wrong number of times, or the word is degenerate."""


class OrientationError(WicksError, ValueError):
    """A letter occurs twice with the same sign, so the surface is not orientable."""

    def __init__(self, message, letters=()):
        super().__init__(message)
        self.letters = tuple(letters)


class OutOfRange(WicksError, IndexError):
    pass


class NonIntegerGenus(WicksError, ArithmeticError):
    pass


class GenusMismatch(WicksError, ValueError):
    pass


class NoSuchAutomorphism(WicksError, ValueError):
    pass


class BadSite(WicksError, ValueError):
    pass


class LimitExceeded(WicksError, ValueError):
    pass


class NonInteger(WicksError, ArithmeticError):
    pass


class Infeasible(WicksError, ValueError):
    pass


class NumericalOverflow(WicksError, OverflowError):
    pass


class NoConvergence(WicksError, RuntimeError):
    pass


class NonPositive(WicksError, ValueError):
    pass
