"""Exception hierarchy shared by every module of the package."""


class DivringError(Exception):
    """Base class for all errors raised by divring."""


class ContextMismatch(DivringError, ValueError):
    pass


class DivisionByZero(DivringError, ZeroDivisionError):
    pass


class ZeroPolynomial(DivringError, ValueError):
    pass


class UnsupportedDegree(DivringError, ValueError):
    pass


class ShapeMismatch(DivringError, ValueError):
    pass


class NotSquare(ShapeMismatch):
    pass


class NotMonic(DivringError, ValueError):
    pass


class NotNonderogatory(DivringError, ValueError):
    pass


class AlgebraMismatch(DivringError, ValueError):
    pass


class CharacteristicTwo(DivringError, ValueError):
    pass


class ZeroParameter(DivringError, ValueError):
    pass


class NotAssociative(DivringError, ValueError):
    pass


class ZeroElement(DivringError, ValueError):
    pass


class NotInvertible(DivringError, ValueError):
    pass


class CenterNotField(DivringError, ValueError):
    pass


class CentralGenerator(DivringError, ValueError):
    pass


class CentralElement(DivringError, ValueError):
    pass


class NotIrreducible(DivringError, ValueError):
    pass


class WrongDegree(DivringError, ValueError):
    pass


class ZeroConstantTerm(DivringError, ValueError):
    pass


class NotMaximalGenerator(DivringError, ValueError):
    pass


class SearchExhausted(DivringError):
    """A bounded search ran out of budget.

    ``stats`` carries whatever counters the search kept (candidates tried,
    how many were skipped as non-invertible, ...).
    """

    def __init__(self, message, **stats):
        super().__init__(message)
        self.stats = stats


class DimensionNotSquare(DivringError, ValueError):
    pass


class NotAField(DivringError, ValueError):
    pass


class NotSeparable(DivringError, ValueError):
    pass


class NotGenerating(DivringError, ValueError):
    pass


class BadBlockStructure(DivringError, ValueError):
    pass


class IdentityViolation(DivringError, AssertionError):
    pass


class AlphabetMismatch(DivringError, ValueError):
    pass


class NotFoundUpTo(DivringError):
    def __init__(self, max_len):
        super().__init__(f"some word of length {max_len} does not decompose")
        self.max_len = max_len


class DegreeTooLarge(DivringError, ValueError):
    pass


class StepBudgetExceeded(DivringError):
    pass


class Undecomposable(DivringError, ValueError):
    pass


class ParseError(DivringError, ValueError):
    """Malformed input text; ``line`` and ``col`` are 1-based."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class UnknownSymbol(DivringError, ValueError):
    pass


class ValidationError(DivringError, ValueError):
    def __init__(self, key, reason):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason
