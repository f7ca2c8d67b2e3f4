"""Valuation semantics mapping subspaces to truth values.

Three lattice-backed policies are provided:

* eigenstate bivalent: definite 1/0 only when the state lies in the range
  or kernel of the projector, otherwise the truth gap;
* Born degree: the expectation value read as a generalized truth degree;
* supervaluation: only the lattice constants carry values (0 for the zero
  subspace, 1 for the whole space), everything else is a gap, independent
  of the state.

Probability is kept apart from truth throughout: ``probability_of`` always
returns the expectation value, even where the truth value is a gap, and the
agreement between the two is something you check, not something assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import NoState, PreconditionViolation
from .lattice import Subspace, meet, join
from .linalg import DEFAULT_TOLERANCE, StateVector, Tolerance, expectation
from .mvl import UNDEFINED, LogicSystem, TruthValue

__all__ = [
    "Policy",
    "TableDriven",
    "Valuation",
    "AgreementReport",
    "CoincidenceReport",
    "AlternativesReport",
    "agreement_report",
    "lukasiewicz_coincidence_check",
    "law_of_alternatives_check",
]


class Policy(Enum):
    """Lattice-backed valuation policies."""

    EIGENSTATE_BIVALENT = "bivalent"
    BORN_DEGREE = "born"
    SUPERVALUATION = "super"


@dataclass(frozen=True)
class TableDriven:
    """Table policy: a logic system plus an explicit atom assignment."""

    system: LogicSystem
    assignment: Mapping[str, TruthValue] = field(default_factory=dict)


@dataclass(frozen=True)
class Valuation:
    """A lattice policy bound to a state vector and tolerance."""

    policy: Policy
    state: StateVector | None = None
    tol: Tolerance = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.state is None and self.policy in (
            Policy.EIGENSTATE_BIVALENT,
            Policy.BORN_DEGREE,
        ):
            raise NoState(f"policy {self.policy.value!r} requires a state vector")

    def value_of(self, s: Subspace) -> TruthValue:
        if self.policy is Policy.SUPERVALUATION:
            # State-independent: only the lattice constants carry values.
            if s.is_bottom():
                return TruthValue(0.0)
            if s.is_top():
                return TruthValue(1.0)
            return UNDEFINED
        e = expectation(s.projector, self.state, self.tol)
        if self.policy is Policy.BORN_DEGREE:
            return TruthValue(min(max(e, 0.0), 1.0))
        if e == 1.0:
            return TruthValue(1.0)
        if e == 0.0:
            return TruthValue(0.0)
        return UNDEFINED

    def value_of_meet(self, a: Subspace, b: Subspace) -> TruthValue:
        return self.value_of(meet(a, b, self.tol))

    def value_of_join(self, a: Subspace, b: Subspace) -> TruthValue:
        return self.value_of(join(a, b, self.tol))

    def probability_of(self, s: Subspace) -> float:
        """Expectation value as outcome probability; defined even under gaps."""
        if self.state is None:
            raise NoState("probability requires a state vector")
        e = expectation(s.projector, self.state, self.tol)
        return min(max(e, 0.0), 1.0)


@dataclass(frozen=True)
class AgreementReport:
    eigenstate_value: TruthValue
    born_value: TruthValue
    probability: float
    agree: bool


def agreement_report(
    state: StateVector, s: Subspace, tol: Tolerance = DEFAULT_TOLERANCE
) -> AgreementReport:
    """Compare eigenstate truth, Born truth, and probability on one subspace.

    They agree exactly when the state lies in the range or the kernel of the
    projector; in a proper superposition the eigenstate value is a gap and
    agreement fails.
    """
    eig = Valuation(Policy.EIGENSTATE_BIVALENT, state, tol).value_of(s)
    born_val = Valuation(Policy.BORN_DEGREE, state, tol)
    born = born_val.value_of(s)
    prob = born_val.probability_of(s)
    agree = (
        eig.is_defined
        and abs(eig.degree - born.degree) <= tol.eq
        and abs(eig.degree - prob) <= tol.eq
    )
    return AgreementReport(eig, born, prob, agree)


@dataclass(frozen=True)
class CoincidenceReport:
    join_matches: bool
    meet_matches: bool
    lhs_join: float
    rhs_join: float
    lhs_meet: float
    rhs_meet: float


def lukasiewicz_coincidence_check(
    state: StateVector,
    a: Subspace,
    b: Subspace,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> CoincidenceReport:
    """Born degree of join/meet versus the Lukasiewicz bounded sum/product.

    The two coincide for orthogonal pairs but not in general (the join of a
    subspace with itself is idempotent while the bounded sum doubles).
    """
    v = Valuation(Policy.BORN_DEGREE, state, tol)
    va = v.probability_of(a)
    vb = v.probability_of(b)
    lhs_join = v.probability_of(join(a, b, tol))
    rhs_join = min(va + vb, 1.0)
    lhs_meet = v.probability_of(meet(a, b, tol))
    rhs_meet = max(va + vb - 1.0, 0.0)
    return CoincidenceReport(
        join_matches=abs(lhs_join - rhs_join) <= tol.eq,
        meet_matches=abs(lhs_meet - rhs_meet) <= tol.eq,
        lhs_join=lhs_join,
        rhs_join=rhs_join,
        lhs_meet=lhs_meet,
        rhs_meet=rhs_meet,
    )


@dataclass(frozen=True)
class AlternativesReport:
    p_join: float
    p_sum: float
    holds: bool


def law_of_alternatives_check(
    state: StateVector,
    a: Subspace,
    b: Subspace,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> AlternativesReport:
    """P[a v b] versus P[a] + P[b] for mutually exclusive subspaces.

    Requires meet(a, b) = 0. Additivity holds for orthogonal pairs and can
    fail for non-orthogonal ones even though they share only the zero vector.
    """
    if meet(a, b, tol).rank != 0:
        raise PreconditionViolation("law of alternatives requires meet(a, b) = 0")
    v = Valuation(Policy.BORN_DEGREE, state, tol)
    p_join = v.probability_of(join(a, b, tol))
    p_sum = v.probability_of(a) + v.probability_of(b)
    return AlternativesReport(p_join, p_sum, abs(p_join - p_sum) <= tol.eq)
