"""Exception hierarchy shared by every module of the package."""


class CharPError(Exception):
    """Base class for all library errors."""


class MixedField(CharPError, TypeError):
    pass


class DivisionByZero(CharPError, ZeroDivisionError):
    pass


class LengthMismatch(CharPError, ValueError):
    pass


class ShapeMismatch(CharPError, ValueError):
    pass


class PrecisionExhausted(CharPError, ValueError):
    pass


class ParseError(CharPError, ValueError):
    """Malformed textual input. Carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownVariable(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class EnumerationTooLarge(CharPError, RuntimeError):
    pass


class SearchSpaceTooLarge(EnumerationTooLarge):
    pass


class DimensionTooLarge(EnumerationTooLarge):
    pass


class CrossCheckFailed(CharPError, AssertionError):
    """Two independent computations of the same object disagree (a bug)."""


class NotDifferential(CharPError, ValueError):
    pass


class NotProper(CharPError, ValueError):
    pass


class NotQuasifield(CharPError, ValueError):
    pass


class ResidueNotPrimeField(CharPError, ValueError):
    pass


class NotRingMap(CharPError, ValueError):
    pass


class NotDerivativeClosed(CharPError, ValueError):
    pass
