"""Exception types shared across the library.

Every library-raised error derives from :class:`QLogicError` so callers (and
the CLI) can distinguish library failures from programming mistakes.
"""

from __future__ import annotations

__all__ = [
    "QLogicError",
    "DimensionMismatch",
    "NotHermitian",
    "ZeroProbabilityBranch",
    "RankAmbiguous",
    "PreconditionViolation",
    "IllegalValueForSystem",
    "NoState",
    "UnboundAtom",
    "ParseError",
    "ConfigInvalid",
    "IndexOutOfRange",
]


class QLogicError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(QLogicError, ValueError):
    """Operands live in spaces of different dimension."""


class NotHermitian(QLogicError, ValueError):
    """A matrix required to be self-adjoint is not, within tolerance."""


class ZeroProbabilityBranch(QLogicError):
    """Projective update onto a branch of (numerically) zero probability."""


class RankAmbiguous(QLogicError):
    """An eigenvalue fell inside the ambiguity window between kernel and range.

    Raised instead of silently rounding when a span is too ill-conditioned
    for the kernel/range split to be trusted.
    """


class PreconditionViolation(QLogicError):
    """A documented operation precondition does not hold."""


class IllegalValueForSystem(QLogicError, ValueError):
    """A truth degree outside the value set of the selected logic system."""


class NoState(QLogicError):
    """A state vector is required but the valuation carries none."""


class UnboundAtom(QLogicError, KeyError):
    """A formula atom has no binding in the scenario."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound atom {self.name!r}"


class ParseError(QLogicError, ValueError):
    """Formula syntax error, located by UTF-8 byte offset."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.offset = offset
        self.expected = tuple(expected)

    def __str__(self) -> str:
        msg = f"{self.args[0]} at byte offset {self.offset}"
        if self.expected:
            msg += " (expected " + " or ".join(self.expected) + ")"
        return msg


class ConfigInvalid(QLogicError, ValueError):
    """A scenario or experiment document failed validation."""

    def __init__(self, field: str, message: str):
        super().__init__(f"field {field!r}: {message}")
        self.field = field


class IndexOutOfRange(QLogicError, IndexError):
    """A path or cell index outside the configured range."""
