"""Exception types raised by fracpw."""


class FracPWError(Exception):
    """Base class for all library errors."""


class InvalidArgument(FracPWError, ValueError):
    pass


class CriticalExponentError(InvalidArgument):
    """Raised when s - 1/p is a nonnegative integer.

    Every construction in the library breaks down at these exponents, so
    they are rejected instead of perturbed.
    """


class GridMismatchError(FracPWError, ValueError):
    pass


class ShiftRangeError(FracPWError, OverflowError):
    pass


class NumericError(FracPWError, ArithmeticError):
    pass
