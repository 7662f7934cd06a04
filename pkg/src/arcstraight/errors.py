"""Shared exception types.

Two failure classes are distinguished everywhere: bad arguments from the
caller (UsageError) and internal consistency failures that would mean a
bug in the algebra itself (InvariantViolation).  The CLI maps them to
distinct exit codes.
"""


class UsageError(ValueError):
    """The caller passed arguments outside an operation's contract."""


class InvariantViolation(RuntimeError):
    """An internal exactness or structure invariant failed."""
