"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class OctzornError(Exception):
    """Base class for all errors raised by octzorn."""


class CtxMismatch(OctzornError):
    """Operands live in different rings."""


class InvalidPrime(OctzornError):
    pass


class InvalidModulus(OctzornError):
    pass


class Unsupported(OctzornError):
    pass


class UnsupportedCharacteristic(Unsupported):
    pass


class BudgetExceeded(OctzornError):
    pass


class ParseError(OctzornError):
    """Malformed polynomial text or JSON; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NotInvertible(OctzornError):
    pass


class NonUnitNorm(NotInvertible):
    pass


class RowNotUnimodular(OctzornError):
    pass


class NotInModule(OctzornError):
    pass


class NotFreeCase(OctzornError):
    pass


class DetNotOne(OctzornError):
    pass


class LengthMismatch(OctzornError):
    pass


class DegreeNotThree(OctzornError):
    pass


class NotUnit(OctzornError):
    pass


class UnknownGroup(OctzornError):
    pass
