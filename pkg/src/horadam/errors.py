"""Exception hierarchy shared by every module of the package."""


class HoradamError(Exception):
    """Base class for all library errors."""


class DiscMismatch(HoradamError):
    """Binary operation on quadratic-ring elements with different discriminants."""


class NotInvertible(HoradamError, ZeroDivisionError):
    """Element of zero norm (zero, or a zero divisor when D is a square)."""


class SurdResidue(HoradamError):
    """A value expected to be rational still carries a sqrt(D) component."""


class InvalidParam(HoradamError, ValueError):
    pass


class DegenerateDiscriminant(InvalidParam):
    """p^2 - 4q = 0, so the characteristic roots coincide."""


class DomainError(HoradamError, ValueError):
    pass


class DenominatorVanishes(HoradamError, ZeroDivisionError):
    """A closed form is undefined because one of its denominators is zero.

    ``index`` is the offending binomial index ``i`` for power sums and ``None``
    for the linear sums; ``factor`` is a short human-readable description.
    """

    def __init__(self, message, *, index=None, factor=None):
        super().__init__(message)
        self.index = index
        self.factor = factor
