"""Exception hierarchy for segcalc."""


class SegcalcError(Exception):
    """Base class for every error raised by the engine."""


class ValidationError(SegcalcError):
    """A configuration or a reducibility set violates a structural constraint."""


class UnknownLine(ValidationError):
    pass


class BadExponentOffset(ValidationError):
    pass


class BrokenPairing(ValidationError):
    pass


class CuspredOnNonSelfDualLine(ValidationError):
    pass


class MultipleReducibilityOrbits(ValidationError):
    pass


class InvalidSegment(SegcalcError):
    pass


class NotCombinable(SegcalcError):
    pass


class NotLinked(SegcalcError):
    pass


class ExplicitlyTooLarge(SegcalcError):
    pass


class UnsupportedLabel(SegcalcError):
    """A formula was requested for a class the engine has no closed form for."""


class MixedLines(SegcalcError):
    pass


class ClassificationGap(SegcalcError):
    """A critical multisegment matched none of the known patterns."""


class DerivativeMismatch(SegcalcError):
    """The two compositions of left and right derivatives disagreed."""


class InconsistentRules(SegcalcError):
    """Two decision rules that both apply returned different verdicts."""


class PreconditionViolated(SegcalcError):
    pass


class MissingSocleHint(SegcalcError):
    pass


class UnknownSuite(SegcalcError):
    pass


class QuerySyntaxError(SegcalcError):
    """Parse failure; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col
