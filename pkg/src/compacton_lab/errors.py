"""Exception hierarchy shared by every module."""


class CompactonError(ValueError):
    """Base class for all library errors."""


class ZeroCoefficient(CompactonError):
    pass


class NonPositivePower(CompactonError):
    pass


class DimensionMismatch(CompactonError):
    pass


class DomainError(CompactonError):
    """Argument outside the real domain of the operation."""


class ValidityError(CompactonError):
    """Parameters violate a family's validity predicate."""


class ParityError(CompactonError):
    """An even-denominator power would be applied to a negative base."""


class NonCompact(CompactonError):
    pass


class DegenerateError(CompactonError):
    pass


class NoRoot(CompactonError):
    pass


class DivergentIntegral(CompactonError):
    pass


class NoTurningPoint(CompactonError):
    pass


class LawNotApplicable(CompactonError):
    pass
