"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TranscertError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveInput(TranscertError, ValueError):
    pass


class NonPositiveBase(TranscertError, ValueError):
    pass


class PrecisionExhausted(TranscertError, ArithmeticError):
    """An enclosure could not be tightened enough before ``max_bits``."""


class DivisionByZero(TranscertError, ZeroDivisionError):
    pass


class FieldMismatch(TranscertError, TypeError):
    pass


class NotInSpan(TranscertError, ValueError):
    pass


class NotIntegerCoords(TranscertError, ValueError):
    pass


class ConjugatePair(TranscertError, ValueError):
    pass


class EqualInputs(TranscertError, ValueError):
    pass


class ZeroForm(TranscertError, ValueError):
    pass


class InvalidField(TranscertError, ValueError):
    """Bad minimal polynomial, reducible generator, or singular basis."""


class NotGalois(TranscertError, ValueError):
    pass


class ParseError(TranscertError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UndefinedSymbol(TranscertError, ValueError):
    pass


class UnsupportedX(TranscertError, ValueError):
    pass


class CeilingExceeded(TranscertError, ValueError):
    """A term would exceed the practical size ceiling for exact evaluation."""


class ConstraintViolated(TranscertError, ValueError):
    def __init__(self, which: str):
        super().__init__(f"parameter constraint violated: {which}")
        self.which = which


class EmptyGrid(TranscertError, ValueError):
    pass


class RatioNotCertified(TranscertError, ArithmeticError):
    pass


class NotRationalA(TranscertError, ValueError):
    pass


class IntegralityViolated(TranscertError, AssertionError):
    """A quantity proven to be an integer came out fractional: a bug, never data."""


class PrecondViolated(TranscertError, ValueError):
    pass
