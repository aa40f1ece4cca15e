"""Exception types shared across the package.

Every failure mode that callers are expected to distinguish gets its own
class; generic misuse (bad argument shapes, variable mismatches) raises the
built-in ValueError.
"""


class RecseqError(Exception):
    """Base class for all package-specific errors."""


class ParseError(RecseqError):
    """Input text could not be parsed; carries the 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class NonRationalLeadingValue(RecseqError):
    """Series leading value is irrational (e.g. 2^(1/3) or e^c, c != 0)."""


class SingularAtOrigin(RecseqError):
    """Denominator vanishes at the expansion point."""


class DegenerateLeadingCoefficient(RecseqError):
    """Recurrence leading coefficient is identically zero."""


class TableTooSmall(RecseqError):
    """Value table cannot supply enough points to fit and verify."""


class NoRecurrenceFound(RecseqError):
    """Search envelope exhausted without a verified recurrence."""


class InconsistentRecurrence(RecseqError):
    """A recurrence has a nonzero residual against oracle values."""


class EvalFail(RecseqError):
    """Every axis order hit a vanishing leading coefficient (FAIL)."""

    def __init__(self, target, detail=""):
        msg = f"FAIL: division by zero on every axis order for target {target}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.target = tuple(target)


class UnexpectedSingularity(RecseqError):
    """Leading coefficient vanished past the declared safe start."""
