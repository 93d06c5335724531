"""Exception hierarchy shared by the library and the command line."""


class DnBraidsError(Exception):
    """Base class for all library errors."""


class UsageError(DnBraidsError, ValueError):
    """Bad input: wrong type, out-of-range index, malformed text."""


class CapacityError(DnBraidsError):
    """A requested computation exceeds a configured size bound."""


class InvariantViolation(DnBraidsError, AssertionError):
    """An internal consistency check failed; this signals a bug."""
