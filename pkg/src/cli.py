"""Command-line front end.

Exit status: 0 when the queried property holds, 1 when it is violated (or a
countermodel was found), 2 on a usage error. Logs go to stderr so that
`--json` output on stdout stays machine-readable.
"""
import argparse
import json
import sys
from typing import Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from config.settings import settings
from monitoring.logger import configure_logging

from .divergence import matrix_table, sweep_table
from .inference import fact_text
from .proportions import LEVELS
from .workbench import workbench

Outcome = Tuple[object, int, List[str]]


def _validate(args: argparse.Namespace) -> Outcome:
    report = workbench.validate(args.interpretation)
    lines = [f"{'valid' if report.valid else 'INVALID'} ({report.mode} mode)"]
    lines += [f"  note: {note}" for note in report.notes]
    lines += [f"  [{v.condition}] {v.message} {json.dumps(v.witness)}" for v in report.violations]
    return report, 0 if report.valid else 1, lines


def _check(args: argparse.Namespace) -> Outcome:
    report = workbench.check(args.interpretation, args.tbox)
    lines = [f"{'OK  ' if v.holds else 'FAIL'} {v.axiom}" + (f"  ({v.detail})" if v.detail else "")
             for v in report.verdicts]
    lines.append("model" if report.holds else f"not a model: {len(report.failures)} failing axiom(s)")
    return report, 0 if report.holds else 1, lines


def _mu(args: argparse.Namespace) -> Outcome:
    result = workbench.mu(args.interpretation, args.source, args.target)
    lines = [
        f"φ{result.source} = {{{', '.join(result.phi_source)}}}",
        f"φ{result.target} = {{{', '.join(result.phi_target)}}}",
        f"μ = {{{', '.join(result.labels)}}}",
    ]
    return result, 0, lines


def _ana(args: argparse.Namespace) -> Outcome:
    result = workbench.ana(args.interpretation, args.assertion, strong=args.strong)
    lines = [
        f"{result.assertion}: {'holds' if result.holds else 'does not hold'}",
        f"  μ{result.left.source}→{result.left.target} = {{{', '.join(result.left.labels)}}}",
        f"  μ{result.right.source}→{result.right.target} = {{{', '.join(result.right.labels)}}}",
    ]
    return result, 0 if result.holds else 1, lines


def _ap(args: argparse.Namespace) -> Outcome:
    result = workbench.ap(args.arguments, args.interp, level=args.level)
    a, b, c, d = result.arguments
    lines = [f"{a} : {b} :: {c} : {d} [{result.level}]: {'holds' if result.holds else 'does not hold'}"]
    return result, 0 if result.holds else 1, lines


def _infer(args: argparse.Namespace) -> Outcome:
    result = workbench.infer(args.tbox, args.witness, depth=args.depth, mode=args.mode)
    lines = []
    for derivation in result.derived:
        if args.explain:
            lines.extend(derivation.explain())
        else:
            lines.append(f"{fact_text(derivation.conclusion)}  ({derivation.rule})")
    lines.append(f"{len(result.derived)} derived fact(s) in {result.rounds} round(s), depth bound {result.depth_bound}"
                 + (", fact bound reached" if result.bound_reached else ""))
    return result.report(), 0, lines


def _countermodel(args: argparse.Namespace) -> Outcome:
    outcome = workbench.countermodel(args.tbox, args.query, args.max_features, args.max_atoms, args.mode)
    result = outcome.result()
    if outcome.found:
        lines = [f"countermodel for {result.query} after {result.candidates} candidate(s):",
                 result.interpretation.model_dump_json(indent=2, exclude_none=True)]
    else:
        lines = [f"{result.query}: {result.caveat} ({result.candidates} candidate(s))"]
    return result, 1 if outcome.found else 0, lines


def _props(args: argparse.Namespace) -> Outcome:
    sweeps, matrix = workbench.props(args.mode, args.seeds, args.jobs)
    if matrix is not None:
        payload: object = matrix
        ok = matrix.agrees
        lines = [matrix_table(matrix).to_string(index=False)]
    else:
        payload = {"mode": args.mode, "sweeps": [s.model_dump(mode="json") for s in sweeps]}
        ok = all(s.holds for s in sweeps)
        lines = [sweep_table(sweeps).to_string(index=False)]
    lines.append("all cells as expected" if ok else "DEVIATION from the expected pattern")
    return payload, 0 if ok else 1, lines


def _fixtures(args: argparse.Namespace) -> Outcome:
    results = workbench.fixtures()
    lines = []
    for r in results:
        lines.append(f"{'ok  ' if r.reproduced else 'FAIL'} {r.id}")
        lines += [f"       {o.proposition} [{o.strength}] premises={o.premises_hold} conclusion={o.conclusion_holds}"
                  for o in r.checks if not o.reproduced]
    ok = all(r.reproduced for r in results)
    return results, 0 if ok else 1, lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="analogy-workbench", description="Analogy reasoning workbench")
    parser.add_argument("--json", action="store_true", help="print reports as JSON")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an interpretation against the domain conditions")
    p.add_argument("interpretation", help="document path or bundled fixture name")
    p.set_defaults(handler=_validate)

    p = sub.add_parser("check", help="model-check a TBox")
    p.add_argument("interpretation")
    p.add_argument("tbox")
    p.set_defaults(handler=_check)

    p = sub.add_parser("mu", help="enumerate the domain translations between two concepts")
    p.add_argument("interpretation")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(handler=_mu)

    p = sub.add_parser("ana", help="evaluate an analogy assertion")
    p.add_argument("interpretation")
    p.add_argument("assertion", help="'C1 : C2 :: D1 : D2'")
    p.add_argument("--strong", action="store_true")
    p.set_defaults(handler=_ana)

    p = sub.add_parser("ap", help="evaluate an analogical proportion over sets or concepts")
    p.add_argument("arguments", nargs=4)
    p.add_argument("--interp", default=None, help="read the arguments as concepts in this interpretation")
    p.add_argument("--level", choices=LEVELS, default="both")
    p.set_defaults(handler=_ap)

    p = sub.add_parser("infer", help="closure of a TBox under the inference rules")
    p.add_argument("tbox")
    p.add_argument("--witness", default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--mode", choices=("strong", "weak"), default=None)
    p.add_argument("--explain", action="store_true", help="print provenance trees")
    p.set_defaults(handler=_infer)

    p = sub.add_parser("countermodel", help="bounded search for a model of the TBox falsifying the query")
    p.add_argument("tbox")
    p.add_argument("query")
    p.add_argument("--max-features", type=int, default=None)
    p.add_argument("--max-atoms", type=int, default=None)
    p.add_argument("--mode", choices=("strong", "weak"), default="strong")
    p.set_defaults(handler=_countermodel)

    p = sub.add_parser("props", help="proposition sweeps (strong) or the divergence matrix (weak)")
    p.add_argument("--mode", choices=("strong", "weak"), default="strong")
    p.add_argument("--seeds", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(handler=_props)

    p = sub.add_parser("fixtures", help="reproduce the counterexample corpus")
    p.set_defaults(handler=_fixtures)
    return parser


def _to_json(payload: object) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2)
    if isinstance(payload, list):
        payload = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
    return json.dumps(payload, indent=2, ensure_ascii=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.log_level, settings.LOG_FORMAT)
    handler: Callable[[argparse.Namespace], Outcome] = args.handler
    try:
        payload, status, lines = handler(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(_to_json(payload) if args.json else "\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
