"""Exception hierarchy shared by all hasseorder modules."""


class HasseOrderError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HasseOrderError):
    """Invalid construction parameters (non-prime p, bad degrees, overflow)."""


class CtxMismatchError(ParameterError):
    """Operands belong to different contexts."""


class NotInvertibleError(HasseOrderError):
    """Inversion of a non-unit; carries the valuation of the offending element."""

    def __init__(self, message, ord=None):
        super().__init__(message)
        self.ord = ord


class PrecisionError(HasseOrderError):
    """An operation would consume more precision than the context carries."""


class ParseError(HasseOrderError):
    """Expression syntax error; carries the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ValidationError(HasseOrderError):
    """A structural validation failed on user-supplied data."""


class RepresentationError(ValidationError):
    """Module data is not in the canonical form the operation requires."""


class InternalError(HasseOrderError):
    """An identity the construction guarantees failed to hold; signals a bug."""
