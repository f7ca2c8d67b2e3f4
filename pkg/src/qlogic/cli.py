"""Command-line front end.

Subcommands: eval, lattice, experiment, limit, tables. All numeric output
is printed with 12 significant digits; ``--json`` switches any command to a
JSON report. Exit codes: 0 success, 2 input/validation error, 1 runtime
error. Every run is deterministic for a fixed seed (``--seed`` defaults to
424242).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from .errors import ConfigInvalid, ParseError, QLogicError, UnboundAtom
from .experiment import (
    DEFAULT_SEED,
    SweepFamily,
    commutator_sweep,
    experiment_from_dict,
    run_patterns,
    simulate_which_way,
)
from .formula import parse_formula, print_formula
from .lattice import (
    Subspace,
    check_orthomodular,
    compatible,
    join,
    leq,
    meet,
    orthocomplement,
)
from .linalg import frobenius_norm
from .mvl import LogicSystem, TruthValue, conj, disj, neg, xor_compound
from .scenario import POLICY_TAGS, bind_and_evaluate, scenario_from_dict
from .valuation import TableDriven

__all__ = ["main", "DEFAULT_SEED"]

_CHECK_NAMES = ("compatibility", "demorgan", "absorption", "orthomodular", "distributivity")


def fmt(x: float) -> str:
    """Render a float with 12 significant digits."""
    return format(float(x), ".12g")


def _jnum(x: float) -> float:
    """Round a float through the 12-digit textual form for stable JSON."""
    return float(fmt(x))


def _fmt_truth(t: TruthValue) -> str:
    return "undefined" if t.is_undefined else fmt(t.degree)


def _jtruth(t: TruthValue):
    return None if t.is_undefined else _jnum(t.degree)


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_eval(args) -> int:
    data = _load_json(args.scenario)
    if args.policy is not None:
        if not isinstance(data, dict):
            raise ConfigInvalid("<root>", "scenario document must be a JSON object")
        data = dict(data)
        data["policy"] = args.policy
        if args.policy not in ("kleene3", "lukasiewicz"):
            data.pop("assignment", None)
    scenario = scenario_from_dict(data)
    formula = parse_formula(args.formula)
    result = bind_and_evaluate(formula, scenario)
    policy_tag = (
        scenario.policy.system.value
        if isinstance(scenario.policy, TableDriven)
        else scenario.policy.value
    )
    if args.json:
        _print_json(
            {
                "formula": print_formula(formula),
                "policy": policy_tag,
                "truth": _jtruth(result.truth),
                "probability": None if result.probability is None else _jnum(result.probability),
                "lattice_rank": None
                if result.lattice_element is None
                else result.lattice_element.rank,
            }
        )
        return 0
    print(f"formula = {print_formula(formula)}")
    print(f"policy = {policy_tag}")
    print(f"truth = {_fmt_truth(result.truth)}")
    if result.probability is not None:
        print(f"probability = {fmt(result.probability)}")
    if result.lattice_element is not None:
        print(f"lattice_rank = {result.lattice_element.rank}")
    return 0


def _lattice_checks(scenario) -> dict:
    names = list(scenario.atoms)
    subs = scenario.atoms
    tol = scenario.tol
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i:]]
    report: dict = {"dimension": scenario.dimension, "atoms": names}

    compat = {}
    for a, b in pairs:
        compat[f"{a},{b}"] = compatible(subs[a], subs[b], tol)
    report["compatibility"] = compat

    def residual_demorgan(a: Subspace, b: Subspace) -> float:
        lhs = orthocomplement(join(a, b, tol), tol)
        rhs = meet(orthocomplement(a, tol), orthocomplement(b, tol), tol)
        return frobenius_norm(lhs.matrix - rhs.matrix)

    def residual_absorption(a: Subspace, b: Subspace) -> float:
        first = join(a, meet(a, b, tol), tol)
        second = meet(a, join(a, b, tol), tol)
        return max(
            frobenius_norm(first.matrix - a.matrix),
            frobenius_norm(second.matrix - a.matrix),
        )

    report["demorgan"] = {
        "max_residual": max(residual_demorgan(subs[a], subs[b]) for a, b in pairs),
        "pairs": len(pairs),
    }
    report["absorption"] = {
        "max_residual": max(residual_absorption(subs[a], subs[b]) for a, b in pairs),
        "pairs": len(pairs),
    }

    ortho_ok = True
    nested = 0
    for a, b in pairs:
        lower, upper = subs[a], join(subs[a], subs[b], tol)
        if leq(lower, upper, tol):
            nested += 1
            if not check_orthomodular(lower, upper, tol):
                ortho_ok = False
    report["orthomodular"] = {"holds": ortho_ok, "nested_pairs": nested}

    witness = None
    worst = 0.0
    for a in names:
        for b in names:
            for c in names:
                lhs = meet(subs[a], join(subs[b], subs[c], tol), tol)
                rhs = join(meet(subs[a], subs[b], tol), meet(subs[a], subs[c], tol), tol)
                residual = frobenius_norm(lhs.matrix - rhs.matrix)
                if residual > worst:
                    worst = residual
                    witness = (a, b, c)
    report["distributivity"] = {
        "max_violation": worst,
        "witness": None if witness is None else list(witness),
    }
    return report


def _cmd_lattice(args) -> int:
    scenario = scenario_from_dict(_load_json(args.scenario))
    selected = _CHECK_NAMES if args.checks is None else tuple(args.checks.split(","))
    for name in selected:
        if name not in _CHECK_NAMES:
            raise ConfigInvalid("checks", f"unknown check {name!r}; choose from {_CHECK_NAMES}")
    report = _lattice_checks(scenario)
    if args.json:
        payload = {"dimension": report["dimension"], "atoms": report["atoms"]}
        for name in selected:
            entry = report[name]
            if name in ("demorgan", "absorption"):
                entry = dict(entry, max_residual=_jnum(entry["max_residual"]))
            if name == "distributivity":
                entry = dict(entry, max_violation=_jnum(entry["max_violation"]))
            payload[name] = entry
        _print_json(payload)
        return 0
    print(f"dimension = {report['dimension']}")
    print("atoms = " + ", ".join(report["atoms"]))
    if "compatibility" in selected:
        print("compatibility:")
        for key, value in report["compatibility"].items():
            print(f"  {key} = {'yes' if value else 'no'}")
    if "demorgan" in selected:
        entry = report["demorgan"]
        print(f"demorgan: max residual = {fmt(entry['max_residual'])} over {entry['pairs']} pairs")
    if "absorption" in selected:
        entry = report["absorption"]
        print(f"absorption: max residual = {fmt(entry['max_residual'])} over {entry['pairs']} pairs")
    if "orthomodular" in selected:
        entry = report["orthomodular"]
        status = "holds" if entry["holds"] else "VIOLATED"
        print(f"orthomodular: {status} on {entry['nested_pairs']} nested pairs")
    if "distributivity" in selected:
        entry = report["distributivity"]
        if entry["witness"] is None or entry["max_violation"] <= 0.0:
            print("distributivity: no violation found among atom triples")
        else:
            a, b, c = entry["witness"]
            print(
                f"distributivity: violated by a={a}, b={b}, c={c} "
                f"with residual = {fmt(entry['max_violation'])}"
            )
    return 0


def _experiment_report(cfg, trials: int) -> dict:
    patterns = run_patterns(cfg)
    which_way = simulate_which_way(cfg, trials)
    return {
        "n_paths": cfg.n_paths,
        "screen_cells": cfg.screen_cells,
        "seed": cfg.seed,
        "trials": trials,
        "coherent": [_jnum(x) for x in patterns.coherent],
        "mixture": [_jnum(x) for x in patterns.mixture],
        "interference_term": [_jnum(x) for x in patterns.interference_term],
        "region_probs": {
            name: {
                "coherent": _jnum(rp.coherent),
                "mixture": _jnum(rp.mixture),
                "conditional": [_jnum(x) for x in rp.conditional],
            }
            for name, rp in patterns.region_probs.items()
        },
        "which_way": {
            "clicks": list(which_way.clicks),
            "xor_always_true": which_way.xor_always_true,
            "post_click_bivalent": which_way.post_click_bivalent,
        },
    }


def _experiment_text(report: dict) -> str:
    lines = [
        f"n_paths = {report['n_paths']}",
        f"screen_cells = {report['screen_cells']}",
        f"seed = {report['seed']}",
        f"trials = {report['trials']}",
    ]
    headers = ("cell", "coherent", "mixture", "interference")
    rows = [
        (str(i), fmt(c), fmt(m), fmt(t))
        for i, (c, m, t) in enumerate(
            zip(report["coherent"], report["mixture"], report["interference_term"])
        )
    ]
    widths = [max(len(h), *(len(r[k]) for r in rows)) for k, h in enumerate(headers)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    for name, rp in report["region_probs"].items():
        cond = ", ".join(fmt(x) for x in rp["conditional"])
        lines.append(
            f"region {name}: coherent = {fmt(rp['coherent'])}, "
            f"mixture = {fmt(rp['mixture'])}, conditional = [{cond}]"
        )
    ww = report["which_way"]
    lines.append("clicks = " + ", ".join(str(c) for c in ww["clicks"]))
    lines.append(f"xor_always_true = {'true' if ww['xor_always_true'] else 'false'}")
    lines.append(f"post_click_bivalent = {'true' if ww['post_click_bivalent'] else 'false'}")
    return "\n".join(lines)


def _cmd_experiment(args) -> int:
    data = _load_json(args.config)
    if not isinstance(data, dict) or "experiment" not in data:
        raise ConfigInvalid("experiment", "missing top-level key")
    cfg = experiment_from_dict(data["experiment"])
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if args.trials < 1:
        raise ConfigInvalid("trials", f"expected an integer >= 1, got {args.trials}")
    report = _experiment_report(cfg, args.trials)
    rendered = (
        json.dumps(report, sort_keys=True, indent=2) if args.json else _experiment_text(report)
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
        print(f"report written to {args.out}")
    else:
        print(rendered)
    return 0


def _cmd_limit(args) -> int:
    try:
        dims = [int(part) for part in args.dims.split(",") if part.strip()]
    except ValueError:
        raise ConfigInvalid("dims", f"expected comma-separated integers, got {args.dims!r}")
    if not dims:
        raise ConfigInvalid("dims", "expected at least one dimension")
    family = SweepFamily(args.family)
    rows = commutator_sweep(family, dims)
    if args.json:
        _print_json(
            {
                "family": family.value,
                "rows": [
                    {
                        "dim": row.dim,
                        "max_projector_commutator_norm": _jnum(
                            row.max_projector_commutator_norm
                        ),
                        "operator_commutator_norm": _jnum(row.operator_commutator_norm),
                    }
                    for row in rows
                ],
            }
        )
        return 0
    print(f"family = {family.value}")
    headers = ("dim", "max_projector_commutator_norm", "operator_commutator_norm")
    table = [
        (str(row.dim), fmt(row.max_projector_commutator_norm), fmt(row.operator_commutator_norm))
        for row in rows
    ]
    widths = [max(len(h), *(len(r[k]) for r in table)) for k, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    return 0


def _table_grid(system: LogicSystem) -> list[float]:
    if system is LogicSystem.BIVALENT:
        return [0.0, 1.0]
    if system is LogicSystem.KLEENE3:
        return [0.0, 0.5, 1.0]
    return [0.0, 0.25, 0.5, 0.75, 1.0]


def _cmd_tables(args) -> int:
    system = LogicSystem(args.system)
    grid = _table_grid(system)
    ops = {
        "neg": lambda a, b: None,
        "and": lambda a, b: conj(a, b, system),
        "or": lambda a, b: disj(a, b, system),
        "xor": lambda a, b: xor_compound(a, b, system),
    }
    if args.json:
        payload = {
            "system": system.value,
            "values": [_jnum(v) for v in grid],
            "neg": [_jnum(neg(TruthValue(v)).degree) for v in grid],
        }
        for name in ("and", "or", "xor"):
            payload[name] = [
                [_jnum(ops[name](TruthValue(a), TruthValue(b)).degree) for b in grid]
                for a in grid
            ]
        _print_json(payload)
        return 0
    print(f"system = {system.value}")
    print("values = " + ", ".join(fmt(v) for v in grid))
    width = max(len(fmt(v)) for v in grid) + 2
    print("neg:")
    for v in grid:
        print(f"  {fmt(v).ljust(width)}{fmt(neg(TruthValue(v)).degree)}")
    for name in ("and", "or", "xor"):
        print(f"{name}:")
        header = "  " + "".ljust(width) + "".join(fmt(b).ljust(width) for b in grid)
        print(header.rstrip())
        for a in grid:
            cells = [
                fmt(ops[name](TruthValue(a), TruthValue(b)).degree).ljust(width)
                for b in grid
            ]
            print(("  " + fmt(a).ljust(width) + "".join(cells)).rstrip())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlogic",
        description="Truth values of quantum propositions over subspace lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a formula in a scenario")
    p_eval.add_argument("--scenario", required=True, help="scenario JSON file")
    p_eval.add_argument("--formula", required=True, help="propositional formula")
    p_eval.add_argument("--policy", choices=POLICY_TAGS, default=None, help="override the scenario policy")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_eval)

    p_lat = sub.add_parser("lattice", help="run lattice-law checks on a scenario's atoms")
    p_lat.add_argument("--scenario", required=True)
    p_lat.add_argument("--checks", default=None, help="comma-separated subset of: " + ",".join(_CHECK_NAMES))
    p_lat.add_argument("--json", action="store_true")
    p_lat.set_defaults(func=_cmd_lattice)

    p_exp = sub.add_parser("experiment", help="run the which-way interference experiment")
    p_exp.add_argument("--config", required=True, help="scenario JSON file with an 'experiment' key")
    p_exp.add_argument("--trials", type=int, default=1000)
    p_exp.add_argument("--seed", type=int, default=None, help=f"override the config seed (config default {DEFAULT_SEED})")
    p_exp.add_argument("--out", default=None, help="write the report to a file instead of stdout")
    p_exp.add_argument("--json", action="store_true")
    p_exp.set_defaults(func=_cmd_experiment)

    p_lim = sub.add_parser("limit", help="projector-commutator dimension sweep")
    p_lim.add_argument("--dims", required=True, help="comma-separated dimensions, e.g. 2,4,8")
    p_lim.add_argument("--family", choices=[f.value for f in SweepFamily], default="clock-shift")
    p_lim.add_argument("--json", action="store_true")
    p_lim.set_defaults(func=_cmd_limit)

    p_tab = sub.add_parser("tables", help="print connective truth tables")
    p_tab.add_argument("--system", choices=[s.value for s in LogicSystem], required=True)
    p_tab.add_argument("--json", action="store_true")
    p_tab.set_defaults(func=_cmd_tables)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigInvalid, UnboundAtom) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: cannot read file: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except QLogicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
