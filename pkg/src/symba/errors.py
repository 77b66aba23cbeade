"""Exception hierarchy shared by every module."""


class SymbaError(Exception):
    """Base class for all library errors."""


class ValidationError(SymbaError, ValueError):
    """Bad parameters or malformed literals."""


class HorizonError(ValidationError):
    """An explicit table or prefix was exhausted."""


class PreconditionError(ValidationError):
    """An operation was called outside its documented domain."""


class NumericError(SymbaError, ArithmeticError):
    """A numeric procedure failed to produce a result."""


class BracketError(NumericError):
    """No finite bracket could be found for a root."""
