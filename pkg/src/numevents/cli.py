"""Batch command-line front-end with deterministic reports.

Exit codes: 0 for a positive verdict (embeddable, Boolean, no violated
inequality), 2 for the corresponding negative verdict, 3 for an
undecided classification and 1 for any input or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .correlations import check_bell_like, evaluate_inequality
from .dataio import (
    DataFormatError,
    read_correlations_csv,
    read_events_csv,
    read_logic_json,
)
from .embedding import EMBEDDABLE, NOT_EMBEDDABLE, UNDECIDED, classify_embedding
from .events import Event, EventFamily, NumericalEventError
from .logic import ConcreteLogic, boolean_by_minima, check_concrete_logic
from .tolerance import DEFAULT_EPS, set_eps
from .valuations import (
    ENUMERATION_CAP,
    count_01_valuations,
    enumerate_01_valuations,
    format_subset,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2
EXIT_UNDECIDED = 3

ENV_EPS = "NUMEVENT_EPS"


def _fmt_number(v: float) -> str:
    if v == int(v):
        return str(int(v))
    return repr(v)


def _event_values(event: Event) -> list[float]:
    return list(event.values)


def _fmt_values(event: Event) -> str:
    return "[" + ", ".join(repr(v) for v in event.values) + "]"


def _emit(report: dict, text_lines: list[str], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _cmd_classify(args: argparse.Namespace) -> int:
    family, names = read_events_csv(args.input)
    if args.budget is not None:
        result = classify_embedding(family, closure_cap=args.budget)
    else:
        result = classify_embedding(family)
    report = {
        "command": "classify",
        "events": list(names),
        "states": list(family.space.labels),
        "verdict": result.verdict,
        "container": str(result.container) if result.container else None,
        "reasons": list(result.reasons),
        "witnesses": [
            {"name": name, "values": _event_values(event)}
            for name, event in result.witnesses
        ],
    }
    lines = [
        "events: " + ", ".join(names),
        "states: " + ", ".join(family.space.labels),
        f"verdict: {result.verdict}",
        f"container: {result.container if result.container else '-'}",
        "reasons:",
    ]
    lines += [f"- {r}" for r in result.reasons]
    if result.witnesses:
        lines.append("witnesses:")
        lines += [
            f"- {name} = {_fmt_values(event)}" for name, event in result.witnesses
        ]
    _emit(report, lines, args.format)
    if result.verdict == EMBEDDABLE:
        return EXIT_OK
    if result.verdict == NOT_EMBEDDABLE:
        return EXIT_NEGATIVE
    return EXIT_UNDECIDED


def _cmd_boolean(args: argparse.Namespace) -> int:
    space, events, family_indices = read_logic_json(args.input)
    defect = check_concrete_logic(events)
    if defect is not None:
        offenders = "; ".join(_fmt_values(e) for e in defect.offenders)
        detail = f"axiom {defect.axiom} violated: {defect.detail}"
        if offenders:
            detail += f" ({offenders})"
        raise NumericalEventError(detail)
    if not family_indices:
        raise DataFormatError("'family' must select at least one logic member")
    logic = ConcreteLogic.from_events(events)
    family = EventFamily(tuple(events[i] for i in family_indices))
    verdict = boolean_by_minima(logic, family)
    report = {
        "command": "boolean",
        "logic_size": len(logic),
        "states": list(space.labels),
        "n": family.n,
        "boolean": verdict.boolean,
        "missing_minimum": list(verdict.missing_minimum)
        if verdict.missing_minimum
        else None,
        "witnesses": [
            {"name": name, "values": _event_values(event)}
            for name, event in (verdict.witnesses or {}).items()
        ],
    }
    lines = [
        f"logic: {len(logic)} events over {space.size} states",
        f"family: n={family.n}",
        f"verdict: {'Boolean' if verdict.boolean else 'not Boolean'}",
    ]
    if verdict.missing_minimum:
        subset = "{" + ",".join(str(i) for i in verdict.missing_minimum) + "}"
        lines.append(f"missing minimum: {subset}")
    if verdict.witnesses:
        lines.append("witnesses:")
        lines += [
            f"- {name} = {_fmt_values(event)}"
            for name, event in verdict.witnesses.items()
        ]
    _emit(report, lines, args.format)
    return EXIT_OK if verdict.boolean else EXIT_NEGATIVE


def _cmd_bell(args: argparse.Namespace) -> int:
    table = read_correlations_csv(args.input)
    if table.n not in (2, 3, 4):
        raise NumericalEventError(f"n outside {{2,3,4}}: {table.n}")
    missing = table.missing_masks()
    if missing:
        raise NumericalEventError(
            "missing correlations: "
            + ", ".join(format_subset(m) for m in missing)
        )
    mode = "all-valuations" if args.all_valuations else "pairs"
    rows = []
    checked = 0
    if mode == "pairs":
        for result in check_bell_like(table):
            checked += 1
            rows.append(result)
    else:
        for packed, coeffs in enumerate(
            enumerate_01_valuations(table.n), start=1
        ):
            checked += 1
            result = evaluate_inequality(coeffs, table, label=f"g#{packed}")
            if result.violated:
                rows.append(result)
    violated = [r for r in rows if r.violated]
    verdict = "violated" if violated else "no obstruction found"
    report = {
        "command": "bell",
        "n": table.n,
        "states": list(table.space.labels),
        "mode": mode,
        "checked": checked,
        "violations": len(violated),
        "rows": [
            {
                "label": r.label,
                "coefficients": list(r.coefficients.values),
                "min": r.min_value,
                "max": r.max_value,
                "violated": r.violated,
                "violating_state": r.violating_state,
            }
            for r in rows
        ],
        "verdict": verdict,
    }
    lines = [
        f"n: {table.n}",
        f"mode: {mode}",
        f"checked: {checked}",
    ]
    for r in rows:
        status = f"VIOLATED at {r.violating_state}" if r.violated else "ok"
        lines.append(
            f"- {r.label}  min={_fmt_number(r.min_value)} "
            f"max={_fmt_number(r.max_value)}  {status}"
        )
    lines.append(f"violations: {len(violated)}")
    lines.append(f"verdict: {verdict}")
    _emit(report, lines, args.format)
    return EXIT_NEGATIVE if violated else EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    n = args.n
    if n < 1:
        raise NumericalEventError(f"n must be positive, got {n}")
    if n > ENUMERATION_CAP and not args.override_enumeration_cap:
        raise NumericalEventError(
            f"enumeration for n={n} needs --override-enumeration-cap"
        )
    count = count_01_valuations(n)
    vectors = (
        [int(v) for v in f.values]
        for f in enumerate_01_valuations(n, allow_large=True)
    )
    if args.format == "json":
        payload = {
            "command": "enumerate",
            "n": n,
            "count": count,
            "valuations": [vec for vec in vectors],
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(f"{count}\n")
        for vec in vectors:
            sys.stdout.write(" ".join(str(v) for v in vec) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numevents",
        description=(
            "Classicality checks for measured event data: embeddability "
            "classification, Boolean minima criteria on concrete logics, "
            "and generated consistency inequalities."
        ),
    )
    parser.add_argument(
        "--eps",
        type=float,
        default=None,
        help=f"comparison tolerance (default {DEFAULT_EPS}, env {ENV_EPS})",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default text)",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="node budget for bounded searches (library default when omitted)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="classify embeddability of an events CSV"
    )
    p_classify.add_argument("input", help="events CSV (state,event,value)")
    p_classify.set_defaults(handler=_cmd_classify)

    p_boolean = sub.add_parser(
        "boolean", help="run the Boolean minima criterion on a logic JSON"
    )
    p_boolean.add_argument("input", help="concrete-logic JSON")
    p_boolean.set_defaults(handler=_cmd_boolean)

    p_bell = sub.add_parser(
        "bell", help="evaluate consistency inequalities on a correlation CSV"
    )
    p_bell.add_argument("input", help="correlation CSV (state,subset,value)")
    mode = p_bell.add_mutually_exclusive_group()
    mode.add_argument(
        "--pairs-only",
        action="store_true",
        help="only the displayed pair inequalities (default)",
    )
    mode.add_argument(
        "--all-valuations",
        action="store_true",
        help="every enumerated 0/1 valuation",
    )
    p_bell.set_defaults(handler=_cmd_bell)

    p_enum = sub.add_parser(
        "enumerate", help="list all non-zero 0/1-partial-sum valuations"
    )
    p_enum.add_argument("n", type=int, help="number of base measurements")
    p_enum.add_argument(
        "--override-enumeration-cap",
        action="store_true",
        help=f"allow n beyond {ENUMERATION_CAP}",
    )
    p_enum.set_defaults(handler=_cmd_enumerate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.eps is not None:
            set_eps(args.eps)
        elif os.environ.get(ENV_EPS):
            set_eps(float(os.environ[ENV_EPS]))
        return args.handler(args)
    except (NumericalEventError, DataFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
