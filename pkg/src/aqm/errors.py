"""Exception hierarchy shared by every module."""


class AqmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AqmError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(AqmError, ValueError):
    """A computed value falls outside the representable range."""


class ParseError(AqmError, ValueError):
    """A byte stream or text input could not be parsed."""


class IntegrityError(ParseError):
    """A stream parsed cleanly but decoded to an invalid value."""
