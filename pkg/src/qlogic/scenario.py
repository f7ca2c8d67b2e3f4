"""Scenario documents: atom bindings, state, policy, and evaluation.

A scenario is a single JSON object:

    {
      "dimension": 2,
      "atoms": {"X1": [[[1, 0], [0, 0]]], "X2": [[[0, 0], [1, 0]]]},
      "state": [[0.6, 0], [0.8, 0]],
      "policy": "super",
      "assignment": {"X1": 0.5}          // only for kleene3 / lukasiewicz
    }

Complex numbers are ``[re, im]`` pairs; each atom maps to a list of spanning
vectors (projectors are derived, so they are always valid); unknown keys are
rejected. An optional ``"experiment"`` key holds a which-way experiment
config (see the experiment module).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import ConfigInvalid, UnboundAtom
from .formula import And, Atom, Formula, Not, Or, Xor, formula_atoms
from .lattice import LatticeContext, Subspace, join, meet, orthocomplement
from .linalg import DEFAULT_TOLERANCE, StateVector, Tolerance
from .mvl import LogicSystem, TruthValue, conj, disj, neg
from .valuation import Policy, TableDriven, Valuation

__all__ = [
    "Scenario",
    "EvalResult",
    "scenario_from_dict",
    "load_scenario",
    "bind_and_evaluate",
    "POLICY_TAGS",
]

_SCENARIO_KEYS = {"dimension", "atoms", "state", "policy", "assignment", "experiment"}

POLICY_TAGS = ("bivalent", "born", "super", "kleene3", "lukasiewicz")


@dataclass(frozen=True)
class Scenario:
    """Atom bindings plus a state vector and a valuation policy."""

    dimension: int
    atoms: Mapping[str, Subspace]
    state: StateVector
    policy: Policy | TableDriven
    tol: Tolerance = DEFAULT_TOLERANCE

    def with_policy(self, policy: Policy | TableDriven) -> "Scenario":
        return replace(self, policy=policy)


@dataclass(frozen=True)
class EvalResult:
    truth: TruthValue
    probability: float | None
    lattice_element: Subspace | None


def _complex_scalar(raw, field: str) -> complex:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)
    ):
        raise ConfigInvalid(field, f"expected a [re, im] pair, got {raw!r}")
    return complex(raw[0], raw[1])


def _complex_vector(raw, field: str, dim: int) -> np.ndarray:
    if not isinstance(raw, list):
        raise ConfigInvalid(field, f"expected a list of [re, im] pairs, got {raw!r}")
    if len(raw) != dim:
        raise ConfigInvalid(field, f"expected {dim} entries, got {len(raw)}")
    return np.array(
        [_complex_scalar(entry, field) for entry in raw], dtype=np.complex128
    )


def _parse_policy(data: dict, tol: Tolerance) -> Policy | TableDriven:
    tag = data.get("policy")
    if tag not in POLICY_TAGS:
        raise ConfigInvalid("policy", f"expected one of {POLICY_TAGS}, got {tag!r}")
    if tag in ("kleene3", "lukasiewicz"):
        system = LogicSystem.KLEENE3 if tag == "kleene3" else LogicSystem.LUKASIEWICZ
        raw = data.get("assignment", {})
        if not isinstance(raw, dict):
            raise ConfigInvalid("assignment", f"expected an object, got {raw!r}")
        assignment: dict[str, TruthValue] = {}
        for name, value in raw.items():
            if value is None:
                assignment[name] = TruthValue(None)
            elif isinstance(value, (int, float)) and not isinstance(value, bool):
                try:
                    tv = TruthValue(float(value))
                except ValueError as exc:
                    raise ConfigInvalid(f"assignment.{name}", str(exc)) from None
                if not system.admits(tv):
                    raise ConfigInvalid(
                        f"assignment.{name}",
                        f"degree {value!r} is not a {system.value} value",
                    )
                assignment[name] = tv
            else:
                raise ConfigInvalid(
                    f"assignment.{name}", f"expected a number or null, got {value!r}"
                )
        return TableDriven(system, assignment)
    if "assignment" in data:
        raise ConfigInvalid("assignment", f"not allowed for policy {tag!r}")
    return Policy(tag)


def scenario_from_dict(data: dict, tol: Tolerance = DEFAULT_TOLERANCE) -> Scenario:
    """Validate a parsed scenario document; raises ConfigInvalid on defects."""
    if not isinstance(data, dict):
        raise ConfigInvalid("<root>", "scenario document must be a JSON object")
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise ConfigInvalid(sorted(unknown)[0], "unknown key")
    dim = data.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ConfigInvalid("dimension", f"expected a positive integer, got {dim!r}")

    raw_atoms = data.get("atoms")
    if not isinstance(raw_atoms, dict) or not raw_atoms:
        raise ConfigInvalid("atoms", "expected a non-empty object of atom spans")
    ctx = LatticeContext.for_dim(dim, tol)
    atoms: dict[str, Subspace] = {}
    for name, spans in raw_atoms.items():
        if not isinstance(spans, list):
            raise ConfigInvalid(f"atoms.{name}", "expected a list of spanning vectors")
        vectors = [
            _complex_vector(vec, f"atoms.{name}[{i}]", dim)
            for i, vec in enumerate(spans)
        ]
        atoms[name] = ctx.span(vectors)

    if "state" not in data:
        raise ConfigInvalid("state", "missing")
    amps = _complex_vector(data["state"], "state", dim)
    try:
        state = StateVector(amps, tol)
    except ValueError as exc:
        raise ConfigInvalid("state", str(exc)) from None

    policy = _parse_policy(data, tol)
    return Scenario(dimension=dim, atoms=atoms, state=state, policy=policy, tol=tol)


def load_scenario(path: str | Path, tol: Tolerance = DEFAULT_TOLERANCE) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return scenario_from_dict(data, tol)


def _eval_lattice(f: Formula, atoms: Mapping[str, Subspace], tol: Tolerance) -> Subspace:
    """Interpret connectives as lattice operations and fold to one subspace."""
    if isinstance(f, Atom):
        return atoms[f.name]
    if isinstance(f, Not):
        return orthocomplement(_eval_lattice(f.operand, atoms, tol), tol)
    left = _eval_lattice(f.left, atoms, tol)
    right = _eval_lattice(f.right, atoms, tol)
    if isinstance(f, And):
        return meet(left, right, tol)
    if isinstance(f, Or):
        return join(left, right, tol)
    # Xor is derived, the same compound shape as in the table interpretation.
    both = meet(left, right, tol)
    return meet(join(left, right, tol), orthocomplement(both, tol), tol)


def _eval_table(f: Formula, values: Mapping[str, TruthValue], system: LogicSystem) -> TruthValue:
    if isinstance(f, Atom):
        return values[f.name]
    if isinstance(f, Not):
        return neg(_eval_table(f.operand, values, system))
    left = _eval_table(f.left, values, system)
    right = _eval_table(f.right, values, system)
    if isinstance(f, And):
        return conj(left, right, system)
    if isinstance(f, Or):
        return disj(left, right, system)
    return conj(disj(left, right, system), neg(conj(left, right, system)), system)


def bind_and_evaluate(f: Formula, sc: Scenario) -> EvalResult:
    """Evaluate a formula in a scenario.

    Lattice-backed policies interpret connectives as lattice operations and
    value the resulting subspace; table policies apply the truth tables to
    the explicit assignment. Probability is reported only for policies that
    carry a state.
    """
    names = formula_atoms(f)
    if isinstance(sc.policy, TableDriven):
        missing = sorted(names - set(sc.policy.assignment))
        if missing:
            raise UnboundAtom(missing[0])
        truth = _eval_table(f, sc.policy.assignment, sc.policy.system)
        return EvalResult(truth=truth, probability=None, lattice_element=None)

    missing = sorted(names - set(sc.atoms))
    if missing:
        raise UnboundAtom(missing[0])
    element = _eval_lattice(f, sc.atoms, sc.tol)
    valuation = Valuation(sc.policy, sc.state, sc.tol)
    truth = valuation.value_of(element)
    probability = valuation.probability_of(element)
    return EvalResult(truth=truth, probability=probability, lattice_element=element)
