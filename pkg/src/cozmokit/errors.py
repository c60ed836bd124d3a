"""Exception types shared across the toolkit."""


class CozmoError(Exception):
    """Base class for every error raised by this package."""


class FormatError(CozmoError, ValueError):
    """Text could not be parsed as bits."""


class LengthError(CozmoError, ValueError):
    """A bit sequence has the wrong length for the operation."""


class UsageError(CozmoError, RuntimeError):
    """An operation was applied to a state it is not defined for."""


class DomainError(CozmoError, ValueError):
    """A numerical routine was called outside its domain."""


class InputError(CozmoError, ValueError):
    """A statistical test cannot run on the given sequence."""


class InputTooShortError(InputError):
    pass


class ParameterError(CozmoError, ValueError):
    """A statistical test parameter is out of range."""
