"""CSV and JSON ingestion and export for event data.

Three file shapes exist:

* events CSV with header ``state,event,value``, one row per state/event
  pair; the long form tolerates any row order but the matrix must be
  complete.
* correlation CSV with header ``state,subset,value`` where subset names
  a non-empty index set such as ``{1,3}`` (a compact ``{13}`` spelling
  is accepted on input).
* concrete-logic JSON ``{"states": [...], "logic": [[0,1,...], ...],
  "family": [indices]}`` with 0-based indices into the logic list.

Parsers report the first offending line; writers emit rows in a fixed
order so identical data serializes identically.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import IO, Iterable, Sequence

from .events import (
    Event,
    EventFamily,
    NumericalEventError,
    StateSpace,
)
from .correlations import CorrelationTable
from .valuations import format_subset

__all__ = [
    "DataFormatError",
    "read_events_csv",
    "write_events_csv",
    "read_correlations_csv",
    "write_correlations_csv",
    "read_logic_json",
    "write_logic_json",
]


class DataFormatError(NumericalEventError):
    """A file does not match its documented schema."""


def _open_text(source, mode: str):
    if isinstance(source, (str, Path)):
        return open(source, mode, newline="", encoding="utf-8"), True
    return source, False


def _read_rows(source, expected_header: tuple[str, ...]):
    stream, owned = _open_text(source, "r")
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError("line 1: empty file") from None
        if tuple(h.strip() for h in header) != expected_header:
            raise DataFormatError(
                f"line 1: expected header '{','.join(expected_header)}'"
            )
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(expected_header):
                raise DataFormatError(
                    f"line {reader.line_num}: expected {len(expected_header)} "
                    f"columns, got {len(row)}"
                )
            rows.append((reader.line_num, tuple(cell.strip() for cell in row)))
        return rows
    finally:
        if owned:
            stream.close()


def _parse_value(text: str, line_num: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise DataFormatError(
            f"line {line_num}, column 'value': not a number: {text!r}"
        ) from None


def read_events_csv(source) -> tuple[EventFamily, tuple[str, ...]]:
    """Parse an events CSV; returns the family and the event names.

    State and event order follow first appearance in the file.
    """
    rows = _read_rows(source, ("state", "event", "value"))
    if not rows:
        raise DataFormatError("no data rows")
    states: list[str] = []
    names: list[str] = []
    cells: dict[tuple[str, str], float] = {}
    for line_num, (state, name, raw) in rows:
        value = _parse_value(raw, line_num)
        if state not in states:
            states.append(state)
        if name not in names:
            names.append(name)
        key = (state, name)
        if key in cells:
            raise DataFormatError(
                f"line {line_num}: duplicate row for state {state!r}, event {name!r}"
            )
        cells[key] = value
    missing = [
        (s, e) for e in names for s in states if (s, e) not in cells
    ]
    if missing:
        s, e = missing[0]
        raise DataFormatError(f"missing value for state {s!r}, event {e!r}")
    space = StateSpace(tuple(states))
    events = []
    for name in names:
        try:
            events.append(Event(tuple(cells[(s, name)] for s in states), space))
        except NumericalEventError as exc:
            raise DataFormatError(f"event {name!r}: {exc}") from exc
    return EventFamily(tuple(events)), tuple(names)


def write_events_csv(
    events: Iterable[Event], names: Sequence[str], target
) -> None:
    items = list(events)
    if len(items) != len(names):
        raise ValueError("one name per event required")
    stream, owned = _open_text(target, "w")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("state", "event", "value"))
        for event, name in zip(items, names):
            for label, value in zip(event.space.labels, event.values):
                writer.writerow((label, name, repr(value)))
    finally:
        if owned:
            stream.close()


def _parse_subset(text: str, line_num: int) -> tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")) or len(body) < 3:
        raise DataFormatError(
            f"line {line_num}, column 'subset': expected '{{1,3}}' form, got {text!r}"
        )
    inner = body[1:-1]
    parts = inner.split(",") if "," in inner else list(inner)
    indices = []
    for part in parts:
        part = part.strip()
        if not part.isdigit() or int(part) < 1:
            raise DataFormatError(
                f"line {line_num}, column 'subset': bad index {part!r} in {text!r}"
            )
        indices.append(int(part))
    if indices != sorted(set(indices)):
        raise DataFormatError(
            f"line {line_num}, column 'subset': indices must be sorted and "
            f"distinct in {text!r}"
        )
    return tuple(indices)


def read_correlations_csv(source) -> CorrelationTable:
    """Parse a correlation CSV into a table.

    n is the largest index mentioned; all singletons up to n must be
    present. Sparse higher-order entries are allowed.
    """
    rows = _read_rows(source, ("state", "subset", "value"))
    if not rows:
        raise DataFormatError("no data rows")
    states: list[str] = []
    parsed: list[tuple[int, str, tuple[int, ...], float]] = []
    n = 0
    for line_num, (state, subset_text, raw) in rows:
        indices = _parse_subset(subset_text, line_num)
        value = _parse_value(raw, line_num)
        if state not in states:
            states.append(state)
        n = max(n, indices[-1])
        parsed.append((line_num, state, indices, value))
    space = StateSpace(tuple(states))
    cells: dict[tuple[int, str], float] = {}
    for line_num, state, indices, value in parsed:
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        key = (mask, state)
        if key in cells:
            raise DataFormatError(
                f"line {line_num}: duplicate row for subset "
                f"{format_subset(mask)}, state {state!r}"
            )
        cells[key] = value
    masks = sorted({mask for mask, _ in cells})
    entries = {}
    for mask in masks:
        missing = [s for s in states if (mask, s) not in cells]
        if missing:
            raise DataFormatError(
                f"subset {format_subset(mask)} has no value for state "
                f"{missing[0]!r}"
            )
        try:
            entries[mask] = Event(
                tuple(cells[(mask, s)] for s in states), space
            )
        except NumericalEventError as exc:
            raise DataFormatError(
                f"subset {format_subset(mask)}: {exc}"
            ) from exc
    return CorrelationTable.build(space, n, entries)


def write_correlations_csv(table: CorrelationTable, target) -> None:
    stream, owned = _open_text(target, "w")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("state", "subset", "value"))
        for mask in sorted(table.entries):
            event = table.entries[mask]
            for label, value in zip(table.space.labels, event.values):
                writer.writerow((label, format_subset(mask), repr(value)))
    finally:
        if owned:
            stream.close()


def read_logic_json(source) -> tuple[StateSpace, tuple[Event, ...], tuple[int, ...]]:
    """Parse a concrete-logic JSON file.

    Returns the state space, the declared member events (not yet checked
    against the closure axioms) and the 0-based family indices.
    """
    stream, owned = _open_text(source, "r")
    try:
        try:
            data = json.load(stream)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"invalid JSON: {exc}") from exc
    finally:
        if owned:
            stream.close()
    if not isinstance(data, dict):
        raise DataFormatError("top level must be an object")
    for key in ("states", "logic", "family"):
        if key not in data:
            raise DataFormatError(f"missing key {key!r}")
    states = data["states"]
    if (
        not isinstance(states, list)
        or not states
        or not all(isinstance(s, str) for s in states)
    ):
        raise DataFormatError("'states' must be a non-empty list of strings")
    space = StateSpace(tuple(states))
    logic_rows = data["logic"]
    if not isinstance(logic_rows, list) or not logic_rows:
        raise DataFormatError("'logic' must be a non-empty list of value rows")
    events = []
    for idx, row in enumerate(logic_rows):
        if not isinstance(row, list) or len(row) != space.size:
            raise DataFormatError(
                f"logic row {idx} must list {space.size} values"
            )
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row):
            raise DataFormatError(f"logic row {idx} must contain numbers")
        try:
            events.append(Event(tuple(float(v) for v in row), space))
        except NumericalEventError as exc:
            raise DataFormatError(f"logic row {idx}: {exc}") from exc
    family = data["family"]
    if not isinstance(family, list) or not all(
        isinstance(i, int) and not isinstance(i, bool) for i in family
    ):
        raise DataFormatError("'family' must be a list of integers")
    for i in family:
        if not 0 <= i < len(events):
            raise DataFormatError(f"family index {i} outside 0..{len(events) - 1}")
    return space, tuple(events), tuple(family)


def write_logic_json(
    space: StateSpace, events: Iterable[Event], family: Sequence[int], target
) -> None:
    payload = {
        "states": list(space.labels),
        "logic": [
            [int(v) if v == int(v) else v for v in e.values] for e in events
        ],
        "family": list(family),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def events_csv_text(events: Iterable[Event], names: Sequence[str]) -> str:
    buffer = io.StringIO()
    write_events_csv(events, names, buffer)
    return buffer.getvalue()


def correlations_csv_text(table: CorrelationTable) -> str:
    buffer = io.StringIO()
    write_correlations_csv(table, buffer)
    return buffer.getvalue()
