"""Numerical events over a finite state space and their pointwise algebra.

An event assigns to each state of a system the probability of one
measurement outcome. The constants 0 and 1 are the all-zero and all-one
events, the complement of p is 1 - p, and two events are orthogonal when
their sum stays below 1 everywhere. These primitives, together with
orthogonal sums, differences of comparable events and pointwise minima,
are all the structure the higher-level modules build on.

Every comparison uses the global tolerance from ``numevents.tolerance``.
Values are clamped to [0, 1] on ingestion when they lie within tolerance
of the interval; anything further out is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .tolerance import get_eps

__all__ = [
    "NumericalEventError",
    "SpaceMismatchError",
    "ValueRangeError",
    "NotOrthogonalError",
    "NotComparableError",
    "DuplicateEventError",
    "NotTwoValuedError",
    "ImproperEventError",
    "BudgetExceededError",
    "StateSpace",
    "Event",
    "EventFamily",
    "zero_event",
    "one_event",
    "approx_equal",
    "complement",
    "leq",
    "orthogonal",
    "ortho_sum",
    "difference",
    "pointwise_min",
    "is_proper",
    "is_two_valued",
]


class NumericalEventError(Exception):
    """Base class for domain errors raised by this package."""


class SpaceMismatchError(NumericalEventError):
    """Operands reference different state spaces."""


class ValueRangeError(NumericalEventError):
    """A probability value lies outside the tolerated [0, 1] band."""


class NotOrthogonalError(NumericalEventError):
    """Orthogonal sum requested for a non-orthogonal pair."""


class NotComparableError(NumericalEventError):
    """Difference requested for events that are not pointwise ordered."""


class DuplicateEventError(NumericalEventError):
    """A family contains two events that coincide within tolerance."""


class NotTwoValuedError(NumericalEventError):
    """A two-valued event was required."""


class ImproperEventError(NumericalEventError):
    """An event comparable with its own complement was rejected."""


class BudgetExceededError(NumericalEventError):
    """A bounded search or closure ran out of its configured budget."""


@dataclass(frozen=True, slots=True)
class StateSpace:
    """Ordered, distinct labels for the finitely many states of a system."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ValueError("state space needs at least one state")
        if len(set(labels)) != len(labels):
            raise ValueError("state labels must be unique")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, slots=True)
class Event:
    """One probability value per state, clamped to [0, 1] on construction."""

    values: tuple[float, ...]
    space: StateSpace

    def __post_init__(self) -> None:
        raw = tuple(self.values)
        if len(raw) != self.space.size:
            raise ValueError(
                f"expected {self.space.size} values, got {len(raw)}"
            )
        eps = get_eps()
        clamped = []
        for label, item in zip(self.space.labels, raw):
            v = float(item)
            if v != v or v < -eps or v > 1.0 + eps:
                raise ValueRangeError(
                    f"value {item!r} at state {label} outside [0, 1]"
                )
            clamped.append(min(1.0, max(0.0, v)))
        object.__setattr__(self, "values", tuple(clamped))


def zero_event(space: StateSpace) -> Event:
    return Event((0.0,) * space.size, space)


def one_event(space: StateSpace) -> Event:
    return Event((1.0,) * space.size, space)


def _require_same_space(p: Event, q: Event) -> None:
    if p.space != q.space:
        raise SpaceMismatchError("events reference different state spaces")


def approx_equal(p: Event, q: Event) -> bool:
    """Pointwise agreement within the global tolerance."""
    if p.space != q.space:
        return False
    eps = get_eps()
    return all(abs(a - b) <= eps for a, b in zip(p.values, q.values))


def complement(p: Event) -> Event:
    """The event 1 - p."""
    return Event(tuple(1.0 - v for v in p.values), p.space)


def leq(p: Event, q: Event) -> bool:
    """Pointwise order p <= q, tolerant within eps."""
    _require_same_space(p, q)
    eps = get_eps()
    return all(a <= b + eps for a, b in zip(p.values, q.values))


def orthogonal(p: Event, q: Event) -> bool:
    """True iff p <= 1 - q, i.e. p(s) + q(s) <= 1 at every state."""
    return leq(p, complement(q))


def ortho_sum(p: Event, q: Event) -> Event:
    """Pointwise sum of an orthogonal pair; raises otherwise."""
    if not orthogonal(p, q):
        raise NotOrthogonalError("not orthogonal")
    # orthogonality bounds the sum by 1 + eps; snap rounding spill to 1
    return Event(tuple(min(1.0, a + b) for a, b in zip(p.values, q.values)), p.space)


def difference(q: Event, p: Event) -> Event:
    """Pointwise q - p for p <= q; raises otherwise."""
    if not leq(p, q):
        raise NotComparableError("not comparable")
    return Event(tuple(max(0.0, b - a) for a, b in zip(p.values, q.values)), q.space)


def pointwise_min(events: Sequence[Event] | Iterable[Event]) -> Event:
    """Coordinatewise minimum of a non-empty collection of events."""
    items = list(events)
    if not items:
        raise ValueError("pointwise minimum of an empty collection")
    first = items[0]
    for other in items[1:]:
        _require_same_space(first, other)
    vals = tuple(min(e.values[k] for e in items) for k in range(first.space.size))
    return Event(vals, first.space)


def is_proper(p: Event) -> bool:
    """True iff p is comparable with its complement in neither direction."""
    c = complement(p)
    return not leq(p, c) and not leq(c, p)


def is_two_valued(p: Event) -> bool:
    """True iff every value is 0 or 1 within tolerance."""
    eps = get_eps()
    return all(v <= eps or v >= 1.0 - eps for v in p.values)


@dataclass(frozen=True, slots=True)
class EventFamily:
    """Finite ordered family of pairwise distinct events on one space."""

    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        events = tuple(self.events)
        if not events:
            raise ValueError("family needs at least one event")
        space = events[0].space
        for e in events[1:]:
            if e.space != space:
                raise SpaceMismatchError("family members reference different state spaces")
        for i in range(len(events)):
            for j in range(i + 1, len(events)):
                if approx_equal(events[i], events[j]):
                    raise DuplicateEventError(
                        f"events {i + 1} and {j + 1} coincide within tolerance"
                    )
        object.__setattr__(self, "events", events)

    @property
    def n(self) -> int:
        return len(self.events)

    @property
    def space(self) -> StateSpace:
        return self.events[0].space

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def with_complements(self) -> tuple[Event, ...]:
        """The members followed by their complements, in family order."""
        return self.events + tuple(complement(e) for e in self.events)
