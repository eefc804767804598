"""Exception hierarchy shared by all rankforge modules."""


class RankforgeError(Exception):
    """Base class for all rankforge errors."""


class SpecMismatchError(RankforgeError):
    """Operands belong to different field towers."""


class InvalidParameterError(RankforgeError):
    """A parameter violates a documented precondition."""


class ShapeError(RankforgeError):
    """Matrix or vector dimensions are incompatible."""


class BudgetExceededError(RankforgeError):
    """An enumeration would exceed the configured resource budget."""


class VerificationError(RankforgeError):
    """An internal cross-check (self-validation) failed."""
