"""Exception hierarchy shared by the library and the script front end."""


class FuzzyError(ValueError):
    """Base class for every error raised by a library operation."""


class InvalidParameterError(FuzzyError):
    """A constructor or operation received parameters violating its contract."""


class DomainViolationError(FuzzyError):
    """A function was applied outside the set where it is defined or monotone."""


class NumericDomainError(FuzzyError):
    """A function produced a non-finite value on a level being extended."""
