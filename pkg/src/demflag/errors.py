"""Exception types shared across the package."""


class InvalidLevel(ValueError):
    """A flag level is out of range for the requested module."""


class InvalidShape(ValueError):
    """A partition does not have the admissible staircase shape."""


class NonUnitConstantTerm(ValueError):
    """A power series cannot be inverted: its constant term is not +-1."""


class InexactDivision(ArithmeticError):
    """An exact polynomial division left a non-zero remainder."""


class MemoLimitExceeded(RuntimeError):
    """The memo table grew past DEMFLAG_MEMO_LIMIT (no eviction is done)."""
