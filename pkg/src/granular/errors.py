"""Exception hierarchy shared by every granulum module."""


class GranulumError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class InputError(GranulumError):
    """Malformed, unknown or out-of-bounds input."""


class PreconditionError(GranulumError):
    """An operation was called outside its stated precondition."""


class UnsupportedError(GranulumError):
    """A requested combination is refused by the library."""
