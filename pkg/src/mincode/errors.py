"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`MincodeError`
and carries a short ``kind`` used by the CLI for its one-line error reports.
"""

from __future__ import annotations


class MincodeError(Exception):
    kind = "Error"


class NotAPrimePower(MincodeError, ValueError):
    kind = "NotAPrimePower"


class Unsupported(MincodeError, ValueError):
    kind = "Unsupported"


class DivisionByZero(MincodeError, ZeroDivisionError):
    kind = "DivisionByZero"


class DimensionMismatch(MincodeError, ValueError):
    kind = "DimensionMismatch"


class ZeroVector(MincodeError, ValueError):
    kind = "ZeroVector"


class Overflow(MincodeError, OverflowError):
    kind = "Overflow"


class RankDeficient(MincodeError, ValueError):
    kind = "RankDeficient"


class ZeroColumn(MincodeError, ValueError):
    kind = "ZeroColumn"


class NotACodeword(MincodeError, ValueError):
    kind = "NotACodeword"


class OutOfRange(MincodeError, ValueError):
    kind = "OutOfRange"


class DegenerateComplement(MincodeError, ValueError):
    kind = "DegenerateComplement"


class GuardExceeded(MincodeError, RuntimeError):
    """A computation would exceed a configured size guard."""

    kind = "GuardExceeded"


class TooLarge(GuardExceeded):
    kind = "TooLarge"


class InvalidInput(MincodeError, ValueError):
    """Malformed matrix, witness, table or checkpoint file."""

    kind = "InvalidInput"
