"""Exception types raised across the toolkit."""


class CatgrError(Exception):
    """Base class for all toolkit errors."""


class RingMismatch(CatgrError):
    pass


class DimensionMismatch(CatgrError):
    pass


class NotSquare(CatgrError):
    pass


class NotInvertible(CatgrError):
    pass


class CyclicQuiver(CatgrError):
    pass


class UnknownObject(CatgrError):
    pass


class ObjectMismatch(CatgrError):
    pass


class CategoryMismatch(CatgrError):
    pass


class NotAUnit(CatgrError):
    pass


class NotStrict(CatgrError):
    pass


class NotRingValued(CatgrError):
    pass


class ParseError(CatgrError):
    pass


class MissingSpec(CatgrError):
    pass


class _InvalidInput(CatgrError):
    """Carries the validation report that rejected the input."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidRepresentation(_InvalidInput):
    pass


class InvalidModule(_InvalidInput):
    pass


class InvalidFunctor(_InvalidInput):
    pass
