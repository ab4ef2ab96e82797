"""Command-line interface: analyze, simulate, predict, and verify.

Exit codes are stable for scripting: 0 success, 1 property failure,
2 scenario error, 3 solver failure, 4 output I/O error, 5 prediction
unavailable.  Set MISALIGN_CONSENSUS_COLOR=0 to disable ANSI color.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import scenarios
from .errors import (
    EigensolverError,
    InternalConsistencyError,
    PredictionUnavailableError,
    ScenarioError,
)
from .graph import is_connected
from .laplacian import build
from .predictor import ConsensusPrediction, consensus_point
from .simulator import Scenario, Trajectory, simulate
from .spectrum import classify, eigenvalues, gershgorin
from .svgplot import trajectory_svg
from .verification import run_suite

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_SCENARIO_ERROR = 2
EXIT_SOLVER_FAILURE = 3
EXIT_IO_ERROR = 4
EXIT_PREDICTION_UNAVAILABLE = 5


def _use_color() -> bool:
    if os.environ.get("MISALIGN_CONSENSUS_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    if _use_color():
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _bold(text: str) -> str:
    return _paint(text, "1")


def _good(text: str) -> str:
    return _paint(text, "32")


def _bad(text: str) -> str:
    return _paint(text, "31")


def _load_scenario(args) -> Scenario:
    if args.builtin is not None:
        s = scenarios.builtin(args.builtin)
    else:
        try:
            s = scenarios.parse_file(args.file)
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    overrides = {}
    if args.horizon is not None:
        overrides["horizon"] = args.horizon
    if args.step is not None:
        overrides["step"] = args.step
    if overrides:
        s = dataclasses.replace(s, **overrides)
    return s


def _analysis_payload(s: Scenario) -> dict:
    L = build(s.graph, s.profile)
    spec = eigenvalues(L)
    verdict = classify(s.graph, s.profile, spec)
    region = gershgorin(s.graph, s.profile)
    prediction: ConsensusPrediction | None = None
    if verdict.kind == "Consensus" and is_connected(s.graph):
        try:
            prediction = consensus_point(
                s.graph, s.profile, s.initial, allow_beyond_hypothesis=True
            )
        except PredictionUnavailableError:
            prediction = None
    return {
        "scenario": s.label,
        "n": s.graph.n,
        "edges": len(s.graph.edges),
        "eigenvalues": [[z.real, z.imag] for z in spec.eigenvalues],
        "zero_count": spec.zero_count,
        "classification": verdict.kind,
        "basis": verdict.basis,
        "note": verdict.note,
        "gershgorin": [
            {"agent": i // 2 + 1, "center": [c.real, c.imag], "radius": r}
            for i, (c, r) in enumerate(region.disks)
        ],
        "prediction": _prediction_payload(prediction),
    }


def _prediction_payload(pred: ConsensusPrediction | None) -> dict | None:
    if pred is None:
        return None
    return {
        "point": [float(v) for v in pred.point],
        "mixing": [[float(v) for v in row] for row in pred.mixing],
        "conserved_value": [float(v) for v in pred.conserved_value],
        "extrapolated": pred.extrapolated,
    }


def _print_analysis(payload: dict) -> None:
    print(
        _bold(f"Scenario {payload['scenario']}")
        + f": {payload['n']} agents, {payload['edges']} edges"
    )
    kind = payload["classification"]
    colored = _good(kind) if kind == "Consensus" else (
        _bad(kind) if kind == "Divergent" else kind
    )
    note = f" [{payload['note']}]" if payload["note"] else ""
    print(f"Classification: {colored} (basis: {payload['basis']}){note}")
    print("Eigenvalues (re, im):")
    for re, im in payload["eigenvalues"]:
        print(f"  {re:+.6f}  {im:+.6f}")
    print("Gershgorin disks (agent: center, radius):")
    for disk in payload["gershgorin"]:
        cx, cy = disk["center"]
        print(f"  {disk['agent']}: ({cx:+.6f}, {cy:+.6f})  r={disk['radius']:g}")
    pred = payload["prediction"]
    if pred is not None:
        px, py = pred["point"]
        print(f"Predicted consensus point: ({px:+.6f}, {py:+.6f})")
        if pred["extrapolated"]:
            print("  note: extrapolated beyond the all-positive-cosine hypothesis")


def cmd_analyze(args) -> int:
    s = _load_scenario(args)
    payload = _analysis_payload(s)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        _print_analysis(payload)
    return EXIT_OK


def _trajectory_csv(traj: Trajectory, n: int) -> str:
    header = "t," + ",".join(f"x{i + 1},y{i + 1}" for i in range(n))
    lines = [header]
    for t, state in zip(traj.times, traj.states):
        row = [f"{t:.17g}"] + [f"{v:.17g}" for v in state]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _outcome_payload(traj: Trajectory) -> dict:
    out = traj.outcome
    return {
        "outcome": out.kind,
        "point": None if out.point is None else [float(v) for v in out.point],
        "time": out.time,
        "samples": int(traj.times.size),
        "final_disagreement": float(traj.disagreement[-1]),
    }


def cmd_simulate(args) -> int:
    s = _load_scenario(args)
    traj = simulate(s)
    outdir = Path(args.output)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        base = s.label.replace(" ", "_") or "scenario"
        (outdir / f"{base}.csv").write_text(
            _trajectory_csv(traj, s.graph.n), encoding="utf-8"
        )
        summary = {"scenario": s.label, **_outcome_payload(traj)}
        (outdir / f"{base}.json").write_text(
            json.dumps(summary, indent=2) + "\n", encoding="utf-8"
        )
        if args.svg:
            (outdir / f"{base}.svg").write_text(
                trajectory_svg(traj.states, s.graph.n, title=s.label),
                encoding="utf-8",
            )
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        out = traj.outcome
        desc = out.kind
        if out.kind == "converged" and out.point is not None:
            desc += f" at ({out.point[0]:+.6f}, {out.point[1]:+.6f}), t={out.time:g}"
        elif out.time is not None:
            desc += f" at t={out.time:g}"
        print(f"{_bold(s.label)}: {desc}")
        print(f"wrote {outdir / (base + '.csv')}")
    return EXIT_OK


def cmd_predict(args) -> int:
    s = _load_scenario(args)
    L = build(s.graph, s.profile)
    spec = eigenvalues(L)
    verdict = classify(s.graph, s.profile, spec)
    if verdict.kind != "Consensus":
        print(
            f"prediction refused: classification is {verdict.kind} "
            f"(basis {verdict.basis}); the agents do not meet at a point",
            file=sys.stderr,
        )
        return EXIT_PREDICTION_UNAVAILABLE
    pred = consensus_point(s.graph, s.profile, s.initial, allow_beyond_hypothesis=True)
    payload = {"scenario": s.label, **_prediction_payload(pred)}
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        px, py = pred.point
        print(_bold(f"Scenario {s.label}"))
        print(f"Predicted consensus point: ({px:+.6f}, {py:+.6f})")
        print("Mixing matrix:")
        for row in pred.mixing:
            print(f"  [{row[0]:+.6f}, {row[1]:+.6f}]")
        cv = pred.conserved_value
        print(f"Conserved value: ({cv[0]:+.6f}, {cv[1]:+.6f})")
        if pred.extrapolated:
            print("note: extrapolated beyond the all-positive-cosine hypothesis")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(seed=args.seed, trials=args.trials)
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "property": r.name,
                        "trials": r.trials,
                        "passed": r.passed,
                        "failures": r.failures,
                    }
                    for r in results
                ],
                indent=2,
            )
        )
    else:
        for r in results:
            tag = _good("PASS") if r.passed else _bad("FAIL")
            print(f"{tag}  {r.name} (trials={r.trials})")
            for failure in r.failures[:3]:
                print(f"      {failure}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY_FAILURE


def _add_scenario_args(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--builtin", metavar="KEY", help="built-in scenario key")
    grp.add_argument("--file", metavar="PATH", help="scenario JSON file")
    sp.add_argument("--horizon", type=float, help="override simulated time span")
    sp.add_argument("--step", type=float, help="override integrator step size")
    sp.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="misalign-consensus",
        description=(
            "Analyze, simulate, and verify planar consensus dynamics whose "
            "agents apply rotation-biased coupling."
        ),
    )
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("analyze", help="eigenvalues, classification, disks")
    _add_scenario_args(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("simulate", help="integrate and write CSV/JSON/SVG")
    _add_scenario_args(sp)
    sp.add_argument("-o", "--output", default=".", help="output directory")
    sp.add_argument("--svg", action="store_true", help="also write an SVG figure")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("predict", help="closed-form consensus point")
    _add_scenario_args(sp)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("verify", help="randomized structural property suite")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.print_help()
        return EXIT_SCENARIO_ERROR
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO_ERROR
    except (EigensolverError, InternalConsistencyError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER_FAILURE
    except PredictionUnavailableError as exc:
        print(f"prediction unavailable: {exc}", file=sys.stderr)
        return EXIT_PREDICTION_UNAVAILABLE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
