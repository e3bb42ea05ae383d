"""Command-line surface over the library.

Every JSON argument accepts either a file path or inline JSON (anything
starting with ``{`` or ``[``).  All commands take ``--json`` for
machine-readable output; human output prints numbers with 10
significant digits.  Exit codes: 0 success, 1 validation error
(malformed input names the offending file), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import (
    audit_all,
    demo_mean_variance_pitfall,
    demo_value_at_risk_pitfall,
    metric_from_spec,
    render_report,
)
from .capacities import SetFunction, choquet_integral
from .envelope import envelope_of
from .metrics import MetricSpec, evaluate
from .probability import CostRandomVariable
from .trees import ScenarioTree, StaticTailEvaluator, compounded_eval, static_eval, \
    time_inconsistency_example

_AXIOM_SHORT = {
    "monotonicity": "mono",
    "translation_invariance": "trans",
    "positive_homogeneity": "homog",
    "subadditivity": "subadd",
    "comonotone_additivity": "comono",
    "law_invariance": "law",
}

_MATRIX_SPECS = (
    MetricSpec.cvar(0.5),
    MetricSpec.expected(),
    MetricSpec.worst(),
    MetricSpec.mean_variance(1.0),
    MetricSpec.entropic(1.0),
    MetricSpec.var(0.5),
    MetricSpec.semideviation(1.0),
)


def _load_json(arg: str, what: str):
    stripped = arg.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed inline JSON for {what}: {exc}") from exc
    try:
        with open(arg, "r") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {what} file {arg!r}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {arg!r}: {exc}") from exc


def _num(x: float) -> str:
    return f"{x:.10g}"


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _path_key(path) -> str:
    return "root" if not path else ".".join(map(str, path))


def _cmd_eval(args) -> None:
    spec = MetricSpec.from_json(_load_json(args.metric, "metric spec"))
    rv = CostRandomVariable.from_json(_load_json(args.rv, "random variable"))
    value = evaluate(spec, rv)
    if args.json:
        _emit({"metric": spec.to_json(), "value": value})
    else:
        print(_num(value))


def _cmd_audit(args) -> None:
    spec = MetricSpec.from_json(_load_json(args.metric, "metric spec"))
    report = audit_all(metric_from_spec(spec), trials=args.trials, seed=args.seed)
    if args.json:
        _emit(report.to_json())
    else:
        print(render_report(report))


def _cmd_choquet(args) -> None:
    g = SetFunction.from_json(_load_json(args.g, "set function"))
    rv = CostRandomVariable.from_json(_load_json(args.rv, "random variable"))
    value = choquet_integral(rv, g)
    if args.json:
        _emit({"value": value})
    else:
        print(_num(value))


def _cmd_envelope(args) -> None:
    g = SetFunction.from_json(_load_json(args.g, "set function"))
    env = envelope_of(g)
    if args.json:
        _emit({"vertices": env.to_json()})
    else:
        print(json.dumps(env.to_json()))


def _cmd_tree_eval(args) -> None:
    tree = ScenarioTree.from_json(_load_json(args.tree, "scenario tree"))
    spec = MetricSpec.from_json(_load_json(args.metric, "metric spec"))
    if args.mode == "static":
        value = static_eval(tree, spec)
        if args.json:
            _emit({"mode": "static", "root": value})
        else:
            print(_num(value))
        return
    root, values = compounded_eval(tree, spec)
    if args.json:
        _emit({
            "mode": "compounded",
            "root": root,
            "values": {_path_key(p): v for p, v in values.items()},
        })
    else:
        print(f"root: {_num(root)}")
        for path in sorted(values, key=lambda p: (len(p), p)):
            if path:
                print(f"  {_path_key(path)}: {_num(values[path])}")


def _stage_inconsistency_payload() -> dict:
    tree = time_inconsistency_example()
    spec = MetricSpec.cvar(2.0 / 3.0)
    stagewise = StaticTailEvaluator(spec)
    stage_values = {
        _path_key((i,)): stagewise.tail_value(tree, (i,))
        for i in range(len(tree.root.children))
    }
    root_static = static_eval(tree, spec)
    root_compounded, values = compounded_eval(tree, spec)
    return {
        "tree": tree.to_json(),
        "metric": spec.to_json(),
        "static_stage_values": stage_values,
        "static_root": root_static,
        "compounded_root": root_compounded,
        "compounded_values": {_path_key(p): v for p, v in values.items()},
    }


def _print_stage_inconsistency(payload: dict) -> None:
    print("stagewise vs static tail assessment, cvar at level 2/3")
    print(f"tree: {json.dumps(payload['tree'])}")
    stage = payload["static_stage_values"]
    stage_text = ", ".join(f"{k}: {_num(v)}" for k, v in sorted(stage.items()))
    print(f"static value at each first-stage node:  {stage_text}   (all <= 0: acceptable)")
    print(f"static value at the root:               {_num(payload['static_root'])}"
          f"   (> 0: flagged as unacceptable)")
    print(f"compounded value at the root:           {_num(payload['compounded_root'])}"
          f"   (agrees with the stage view)")


def _cmd_tree_demo(args) -> None:
    payload = _stage_inconsistency_payload()
    if args.json:
        _emit(payload)
    else:
        _print_stage_inconsistency(payload)


def _demo_table1(args) -> None:
    demo = demo_mean_variance_pitfall(trials=args.trials, seed=args.seed)
    if args.json:
        _emit(demo.to_json())
        return
    print("mean-variance preference reversal (beta = 1)")
    print(f"outcome probabilities: {list(demo.probs)}")
    print(f"costs A = {list(demo.low_costs)}   mean_variance = {_num(demo.score_low)}")
    print(f"costs B = {list(demo.high_costs)}   mean_variance = {_num(demo.score_high)}")
    print("A costs no more than B in every outcome, yet the metric prefers B.")
    verdict = demo.monotonicity_verdict
    print(f"monotonicity audit: {verdict.verdict}"
          + (f" [{verdict.counterexample.label}]" if verdict.counterexample else ""))


def _demo_table2(args) -> None:
    demo = demo_value_at_risk_pitfall()
    if args.json:
        _emit(demo.to_json())
        return
    print(f"value-at-risk blindness to catastrophe size (alpha = {demo.alpha:g})")
    print(f"outcome probabilities: {list(demo.probs)}")
    print(f"costs A = {list(demo.mild_costs)}   var = {_num(demo.var_mild)}"
          f"   cvar = {_num(demo.cvar_mild)}")
    print(f"costs B = {list(demo.extreme_costs)}   var = {_num(demo.var_extreme)}"
          f"   cvar = {_num(demo.cvar_extreme)}")
    print(f"var prefers {demo.var_prefers}; cvar prefers {demo.cvar_prefers}.")


def _demo_table3(args) -> None:
    reports = [
        audit_all(metric_from_spec(spec), trials=args.trials, seed=args.seed)
        for spec in _MATRIX_SPECS
    ]
    if args.json:
        _emit({
            "trials": args.trials,
            "seed": args.seed,
            "metrics": [r.to_json() for r in reports],
        })
        return
    axioms = [v.axiom for v in reports[0].verdicts]
    name_width = max(len(r.metric_name) for r in reports)
    header = "metric".ljust(name_width) + "  " + "  ".join(
        _AXIOM_SHORT[a].ljust(6) for a in axioms
    )
    print(f"axiom matrix audit (trials={args.trials}, seed={args.seed})")
    print(header)
    discrepancies = []
    for report in reports:
        cells = []
        flagged = {d.axiom for d in report.discrepancies}
        for v in report.verdicts:
            cell = "VIOL" if v.violated else "ok"
            if v.axiom in flagged:
                cell += "!"
            cells.append(cell.ljust(6))
        print(report.metric_name.ljust(name_width) + "  " + "  ".join(cells))
        for d in report.discrepancies:
            discrepancies.append(f"{report.metric_name}: {d.describe()}")
    print("legend: ok = no violation found (not a proof); VIOL = counterexample found;")
    print("        ! = disagrees with the commonly reported axiom profile")
    if discrepancies:
        print("discrepancies:")
        for line in discrepancies:
            print(f"  {line}")


def _cmd_demo(args) -> None:
    {
        "table1": _demo_table1,
        "table2": _demo_table2,
        "table3": _demo_table3,
        "fig5": _cmd_tree_demo,
    }[args.artifact](args)


def _add_json_flag(parser) -> None:
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskkit",
        description="evaluate, audit, and compose risk metrics over finite costs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a metric on a cost random variable")
    p.add_argument("--metric", required=True, help="metric spec (JSON file or inline)")
    p.add_argument("--rv", required=True, help="random variable (JSON file or inline)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("audit", help="run the six axiom audits on a metric")
    p.add_argument("--metric", required=True, help="metric spec (JSON file or inline)")
    p.add_argument("--trials", type=int, default=10_000,
                   help="random trials per axiom (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="audit seed (default 0)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("choquet", help="integrate a variable against a capacity")
    p.add_argument("--g", required=True, help="set function (JSON file or inline)")
    p.add_argument("--rv", required=True, help="random variable (JSON file or inline)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_choquet)

    p = sub.add_parser("envelope", help="core vertices of a submodular capacity")
    p.add_argument("--g", required=True, help="set function (JSON file or inline)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_envelope)

    p = sub.add_parser("tree", help="scenario tree evaluation")
    tree_sub = p.add_subparsers(dest="tree_command", required=True)

    pe = tree_sub.add_parser("eval", help="evaluate a tree statically or compounded")
    pe.add_argument("--mode", choices=("static", "compounded"), required=True)
    pe.add_argument("--metric", required=True, help="metric spec (JSON file or inline)")
    pe.add_argument("tree", help="scenario tree (JSON file or inline)")
    _add_json_flag(pe)
    pe.set_defaults(handler=_cmd_tree_eval)

    pd = tree_sub.add_parser("demo", help="built-in scenario tree demos")
    pd.add_argument("artifact", choices=("fig5",),
                    help="fig5: two-stage tree acceptable stagewise, flagged statically")
    _add_json_flag(pd)
    pd.set_defaults(handler=_cmd_tree_demo)

    p = sub.add_parser("demo", help="reproduce the canonical pitfall artifacts")
    p.add_argument(
        "artifact", choices=("table1", "table2", "table3", "fig5"),
        help="table1: mean-variance reversal; table2: quantile blindness; "
             "table3: axiom matrix; fig5: stagewise vs static tail assessment",
    )
    p.add_argument("--trials", type=int, default=10_000,
                   help="random trials per axiom where audits run (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="audit seed (default 0)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_demo)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
