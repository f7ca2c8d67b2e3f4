"""Truth-value algebra: degrees in [0, 1] plus a truth gap.

Connectives follow the strong Kleene tables (max / min / 1 - t) for the
bivalent and 3-valued systems and the Lukasiewicz bounded sum / product for
the fuzzy system. The gap value is absorbing: a connective applied to an
undefined operand is undefined. Compound values for gappy atoms under the
supervaluationist reading come from the lattice instead (see valuation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import IllegalValueForSystem
from .linalg import DEFAULT_TOLERANCE, Tolerance

__all__ = [
    "TruthValue",
    "UNDEFINED",
    "LogicSystem",
    "neg",
    "disj",
    "conj",
    "xor_compound",
    "is_bivalent",
]


@dataclass(frozen=True)
class TruthValue:
    """Either a truth degree in [0, 1] or the gap (``degree is None``)."""

    degree: float | None = None

    def __post_init__(self):
        if self.degree is not None:
            d = float(self.degree)
            if not math.isfinite(d) or not (0.0 <= d <= 1.0):
                raise ValueError(f"truth degree must lie in [0, 1], got {self.degree!r}")
            object.__setattr__(self, "degree", d)

    @property
    def is_undefined(self) -> bool:
        return self.degree is None

    @property
    def is_defined(self) -> bool:
        return self.degree is not None

    def __str__(self) -> str:
        return "undefined" if self.degree is None else repr(self.degree)


UNDEFINED = TruthValue(None)
TRUE = TruthValue(1.0)
FALSE = TruthValue(0.0)


class LogicSystem(Enum):
    BIVALENT = "bivalent"
    KLEENE3 = "kleene3"
    LUKASIEWICZ = "lukasiewicz"

    def admits(self, t: TruthValue) -> bool:
        """Whether a defined degree belongs to this system's value set.

        The gap is always admitted; it propagates rather than errors.
        """
        if t.is_undefined:
            return True
        if self is LogicSystem.BIVALENT:
            return t.degree in (0.0, 1.0)
        if self is LogicSystem.KLEENE3:
            return t.degree in (0.0, 0.5, 1.0)
        return True


def _require(t: TruthValue, sys: LogicSystem) -> None:
    if not sys.admits(t):
        raise IllegalValueForSystem(f"degree {t.degree!r} is not a {sys.value} value")


def neg(t: TruthValue) -> TruthValue:
    """Lukasiewicz negation 1 - t; the gap propagates."""
    if t.is_undefined:
        return UNDEFINED
    return TruthValue(1.0 - t.degree)


def disj(a: TruthValue, b: TruthValue, sys: LogicSystem) -> TruthValue:
    """Disjunction: max for bivalent/Kleene, bounded sum for Lukasiewicz."""
    _require(a, sys)
    _require(b, sys)
    if a.is_undefined or b.is_undefined:
        return UNDEFINED
    if sys is LogicSystem.LUKASIEWICZ:
        return TruthValue(min(a.degree + b.degree, 1.0))
    return TruthValue(max(a.degree, b.degree))


def conj(a: TruthValue, b: TruthValue, sys: LogicSystem) -> TruthValue:
    """Conjunction: min for bivalent/Kleene, bounded product for Lukasiewicz."""
    _require(a, sys)
    _require(b, sys)
    if a.is_undefined or b.is_undefined:
        return UNDEFINED
    if sys is LogicSystem.LUKASIEWICZ:
        return TruthValue(max(a.degree + b.degree - 1.0, 0.0))
    return TruthValue(min(a.degree, b.degree))


def xor_compound(a: TruthValue, b: TruthValue, sys: LogicSystem) -> TruthValue:
    """Exclusive disjunction as the compound (a v b) & !(a & b)."""
    return conj(disj(a, b, sys), neg(conj(a, b, sys)), sys)


def is_bivalent(t: TruthValue, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff t is a definite classical value (0 or 1 after snapping)."""
    if t.is_undefined:
        return False
    return abs(t.degree) <= tol.eq or abs(t.degree - 1.0) <= tol.eq
