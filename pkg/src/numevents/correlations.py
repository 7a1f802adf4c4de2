"""Correlation tables and the Bell-type inequalities they must satisfy.

A correlation table records, per system state, the probability p_I that
all measurements with indices in I fire together. The entries are user
data, not computed minima, but ingestion enforces the one structural
law any joint-probability reading implies: p_I <= p_J pointwise whenever
J is a subset of I.

``check_bell_like`` evaluates the explicit inequality lists for
n in {2, 3, 4}; every row has the shape p_I + p_J - p_(I u J) <= 1 and is
generated by ``pair_inequality``. When no row is violated, the same
(I, J) schedule yields commutation witnesses a = p_I - p_(I u J) whose
defining chains a <= p_I <= a + p_J <= 1 are exactly the inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .events import (
    Event,
    EventFamily,
    NumericalEventError,
    SpaceMismatchError,
    StateSpace,
    difference,
    leq,
)
from .tolerance import get_eps
from .valuations import (
    SetFunction,
    format_subset,
    is_bell_valuation,
    pair_inequality,
    subset_labels,
)

__all__ = [
    "MissingCorrelationError",
    "MonotonicityError",
    "InequalityViolatedError",
    "CorrelationTable",
    "InequalityResult",
    "evaluate_inequality",
    "check_bell_like",
    "pair_schedule",
    "witness_relations",
    "witnesses_from_correlations",
]


class MissingCorrelationError(NumericalEventError):
    """An inequality references a correlation the table does not hold."""


class MonotonicityError(NumericalEventError):
    """A joint correlation exceeds one of its marginals."""


class InequalityViolatedError(NumericalEventError):
    """An operation required a table with no violated inequality."""


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """Events p_I per non-empty index subset I, keyed by bitmask."""

    space: StateSpace
    n: int
    entries: Mapping[int, Event]

    @classmethod
    def build(
        cls, space: StateSpace, n: int, entries: Mapping[int, Event]
    ) -> "CorrelationTable":
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        top = (1 << n) - 1
        clean: dict[int, Event] = {}
        for mask in sorted(entries):
            if not 1 <= mask <= top:
                raise ValueError(f"subset mask {mask} outside 1..{top}")
            event = entries[mask]
            if event.space != space:
                raise SpaceMismatchError(
                    f"correlation {format_subset(mask)} uses a different state space"
                )
            clean[mask] = event
        for i in range(n):
            if (1 << i) not in clean:
                raise MissingCorrelationError(
                    f"missing base event {format_subset(1 << i)}"
                )
        # p_I <= p_J whenever J subset of I: joint outcomes cannot out-probabilize marginals
        masks = sorted(clean)
        for big in masks:
            for small in masks:
                if small != big and big & small == small:
                    if not leq(clean[big], clean[small]):
                        raise MonotonicityError(
                            f"p_{subset_labels(big)} exceeds p_{subset_labels(small)}"
                        )
        return cls(space=space, n=n, entries=MappingProxyType(clean))

    def event(self, mask: int) -> Event:
        try:
            return self.entries[mask]
        except KeyError:
            raise MissingCorrelationError(
                f"missing correlation {format_subset(mask)}"
            ) from None

    def missing_masks(self) -> tuple[int, ...]:
        """Masks of all absent subsets below 2**n."""
        return tuple(
            m for m in range(1, 1 << self.n) if m not in self.entries
        )

    def base_family(self) -> EventFamily:
        return EventFamily(tuple(self.entries[1 << i] for i in range(self.n)))


@dataclass(frozen=True, slots=True)
class InequalityResult:
    """Evaluation of one valuation against a correlation table."""

    label: str
    coefficients: SetFunction
    per_state: tuple[float, ...]
    min_value: float
    max_value: float
    violated: bool
    violating_state: str | None


def evaluate_inequality(
    f: SetFunction, table: CorrelationTable, label: str | None = None
) -> InequalityResult:
    """Evaluate sum_I f(I) p_I(s) per state and flag exits from [0, 1]."""
    if f.n != table.n:
        raise ValueError(f"coefficients use n={f.n}, table uses n={table.n}")
    support = f.support()
    missing = [m for m in support if m not in table.entries]
    if missing:
        raise MissingCorrelationError(
            "missing correlations: "
            + ", ".join(format_subset(m) for m in missing)
        )
    values = []
    for k in range(table.space.size):
        values.append(sum(f.value(m) * table.entries[m].values[k] for m in support))
    per_state = tuple(values)
    lo = min(per_state)
    hi = max(per_state)
    eps = get_eps()
    violating_state = None
    for k, v in enumerate(per_state):
        if v < -eps or v > 1.0 + eps:
            violating_state = table.space.labels[k]
            break
    return InequalityResult(
        label=label if label is not None else "valuation",
        coefficients=f,
        per_state=per_state,
        min_value=lo,
        max_value=hi,
        violated=violating_state is not None,
        violating_state=violating_state,
    )


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _mask(*indices: int) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def pair_schedule(n: int) -> tuple[tuple[int, int], ...]:
    """The (I, J) rows of the displayed inequality lists, in display order.

    n=2 has one row, n=3 five, n=4 twenty-three.
    """
    if n == 2:
        return ((_mask(1), _mask(2)),)
    if n == 3:
        rows = [(_mask(i), _mask(j)) for i, j in _pairs(3)]
        rows.append((_mask(1, 2), _mask(1, 3)))
        rows.append((_mask(1, 2), _mask(2, 3)))
        return tuple(rows)
    if n == 4:
        rows = [(_mask(i), _mask(j)) for i, j in _pairs(4)]
        triples = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
        for i, j, k in triples:
            rows.append((_mask(i, j), _mask(i, k)))
        for i, j, k in triples:
            rows.append((_mask(i, j), _mask(j, k)))
        rows.append((_mask(1, 2), _mask(3, 4)))
        rows.append((_mask(1, 3), _mask(2, 4)))
        rows.append((_mask(1, 4), _mask(2, 3)))
        rows.append((_mask(1, 2, 3), _mask(1, 2, 4)))
        rows.append((_mask(1, 2, 3), _mask(1, 3, 4)))
        rows.append((_mask(1, 2, 3), _mask(2, 3, 4)))
        rows.append((_mask(1, 2, 4), _mask(1, 3, 4)))
        rows.append((_mask(1, 2, 4), _mask(2, 3, 4)))
        rows.append((_mask(1, 3, 4), _mask(2, 3, 4)))
        return tuple(rows)
    raise ValueError(f"no inequality list for n={n}; supported n are 2, 3, 4")


def _row_label(i_mask: int, j_mask: int) -> str:
    return (
        f"p_{subset_labels(i_mask)} + p_{subset_labels(j_mask)}"
        f" - p_{subset_labels(i_mask | j_mask)} <= 1"
    )


def check_bell_like(table: CorrelationTable) -> tuple[InequalityResult, ...]:
    """Evaluate the full displayed inequality list for table.n in {2, 3, 4}."""
    results = []
    for i_mask, j_mask in pair_schedule(table.n):
        coeffs = pair_inequality(i_mask, j_mask, table.n)
        if not is_bell_valuation(coeffs):
            raise RuntimeError(
                f"internal error: row {_row_label(i_mask, j_mask)} is not a valuation"
            )
        results.append(
            evaluate_inequality(coeffs, table, label=_row_label(i_mask, j_mask))
        )
    return tuple(results)


def witness_relations(n: int) -> tuple[tuple[str, int, int], ...]:
    """(witness name, I mask, J mask) per schedule row.

    The witness for a row is a = p_I - p_(I u J); its name is derived from
    the first row that introduces the pair (I, I u J).
    """
    names: dict[tuple[int, int], str] = {}
    relations = []
    for i_mask, j_mask in pair_schedule(n):
        key = (i_mask, i_mask | j_mask)
        if key not in names:
            names[key] = f"a_{subset_labels(i_mask)}{subset_labels(j_mask)}"
        relations.append((names[key], i_mask, j_mask))
    return tuple(relations)


def witnesses_from_correlations(table: CorrelationTable) -> dict[str, Event]:
    """Commutation witnesses a = p_I - p_(I u J) for a consistent table.

    Requires check_bell_like to pass; each witness then satisfies
    a <= p_I <= a + p_J <= 1 for every schedule row it serves.
    """
    violated = [r.label for r in check_bell_like(table) if r.violated]
    if violated:
        raise InequalityViolatedError(
            "witnesses need a consistent table; violated: " + "; ".join(violated)
        )
    witnesses: dict[str, Event] = {}
    for name, i_mask, j_mask in witness_relations(table.n):
        if name not in witnesses:
            witnesses[name] = difference(
                table.event(i_mask), table.event(i_mask | j_mask)
            )
    return witnesses
