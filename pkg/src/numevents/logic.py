"""Concrete logics of two-valued events and Boolean-embeddability checks.

A concrete logic is a finite set of two-valued events containing 0 that
is closed under complement and under sums of orthogonal pairs. Because a
two-valued event is the indicator of a state subset, the whole module
works on bitmasks: complement is XOR with the full mask, orthogonality
is disjointness, and orthogonal sum is union.

Two independent routes decide whether a family sits inside a Boolean
subalgebra of a logic P:

* ``boolean_by_minima`` checks that the pointwise minimum of every
  non-empty subfamily is a member of P (the criterion for n in
  {2, 3, 4}) and, on success, derives the commutation witnesses from the
  minima table.
* ``boolean_oracle`` searches directly for pairwise-orthogonal non-zero
  members of P that sum to 1 such that every family member is a sum of a
  subfamily. The two routes must agree; keep them separate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .correlations import CorrelationTable, witnesses_from_correlations
from .events import (
    BudgetExceededError,
    Event,
    EventFamily,
    NotTwoValuedError,
    NumericalEventError,
    SpaceMismatchError,
    StateSpace,
    approx_equal,
    complement,
    is_two_valued,
    leq,
    pointwise_min,
)
from .tolerance import get_eps

__all__ = [
    "NotInLogicError",
    "LogicDefect",
    "ConcreteLogic",
    "CommuteWitness",
    "BooleanVerdict",
    "event_mask",
    "mask_event",
    "gfe_closure",
    "check_concrete_logic",
    "is_concrete_logic",
    "commute_witness",
    "commutation_chain_holds",
    "boolean_by_minima",
    "boolean_oracle",
    "DEFAULT_SEARCH_BUDGET",
    "DEFAULT_CLOSURE_CAP",
    "DEFAULT_MEMBER_CAP",
]

DEFAULT_SEARCH_BUDGET = 100_000
DEFAULT_CLOSURE_CAP = 1 << 16
DEFAULT_MEMBER_CAP = 4096


class NotInLogicError(NumericalEventError):
    """An event was required to be a member of the given logic or set."""


def event_mask(p: Event) -> int:
    """Bitmask of the states where a two-valued event equals 1."""
    eps = get_eps()
    mask = 0
    for k, v in enumerate(p.values):
        if v >= 1.0 - eps:
            mask |= 1 << k
        elif v > eps:
            raise NotTwoValuedError("not two-valued")
    return mask


def mask_event(mask: int, space: StateSpace) -> Event:
    """Indicator event of a state subset given as a bitmask."""
    if not 0 <= mask < (1 << space.size):
        raise ValueError(f"mask {mask} outside the state space")
    return Event(
        tuple(1.0 if mask & (1 << k) else 0.0 for k in range(space.size)), space
    )


@dataclass(frozen=True, slots=True)
class LogicDefect:
    """A violated closure axiom with the offending members.

    axiom is one of 'two-valued', 'A1' (zero member), 'A2' (complement),
    'A3' (orthogonal sum).
    """

    axiom: str
    detail: str
    offenders: tuple[Event, ...]


@dataclass(frozen=True)
class ConcreteLogic:
    """A closed set of two-valued events, stored as state-subset masks."""

    space: StateSpace
    masks: frozenset[int]

    def __post_init__(self) -> None:
        full = (1 << self.space.size) - 1
        if any(not 0 <= m <= full for m in self.masks):
            raise ValueError("mask outside the state space")
        if 0 not in self.masks:
            raise ValueError("closure axiom A1 violated: zero event missing")
        for m in self.masks:
            if (m ^ full) not in self.masks:
                raise ValueError("closure axiom A2 violated: complement missing")
        for a in self.masks:
            for b in self.masks:
                if a < b and a & b == 0 and (a | b) not in self.masks:
                    raise ValueError(
                        "closure axiom A3 violated: orthogonal sum missing"
                    )

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> "ConcreteLogic":
        items = list(events)
        if not items:
            raise ValueError("a concrete logic needs at least the zero event")
        space = items[0].space
        for e in items[1:]:
            if e.space != space:
                raise SpaceMismatchError("logic members reference different state spaces")
        return cls(space=space, masks=frozenset(event_mask(e) for e in items))

    @property
    def events(self) -> tuple[Event, ...]:
        return tuple(mask_event(m, self.space) for m in sorted(self.masks))

    def contains_mask(self, mask: int) -> bool:
        return mask in self.masks

    def contains(self, p: Event) -> bool:
        if p.space != self.space:
            return False
        try:
            return event_mask(p) in self.masks
        except NotTwoValuedError:
            return False

    def __len__(self) -> int:
        return len(self.masks)


def gfe_closure(
    events: Iterable[Event],
    space: StateSpace | None = None,
    *,
    max_size: int = DEFAULT_CLOSURE_CAP,
) -> ConcreteLogic:
    """Smallest concrete logic containing the given two-valued events.

    Fixpoint under complement and disjoint union, seeded with 0 and 1.
    An empty collection needs an explicit state space and yields {0, 1}.
    """
    items = list(events)
    if space is None:
        if not items:
            raise ValueError("empty generation needs an explicit state space")
        space = items[0].space
    full = (1 << space.size) - 1
    masks = {0, full}
    for e in items:
        if e.space != space:
            raise SpaceMismatchError("events reference different state spaces")
        masks.add(event_mask(e))
    while True:
        fresh = set()
        for m in masks:
            c = m ^ full
            if c not in masks:
                fresh.add(c)
        for a in masks:
            for b in masks:
                if a < b and a & b == 0 and (a | b) not in masks:
                    fresh.add(a | b)
        if not fresh:
            break
        masks |= fresh
        if len(masks) > max_size:
            raise BudgetExceededError("budget exceeded: closure size")
    return ConcreteLogic(space=space, masks=frozenset(masks))


def check_concrete_logic(events: Iterable[Event]) -> LogicDefect | None:
    """Verify the closure axioms on a raw event set; None means all hold."""
    items = list(events)
    if not items:
        return LogicDefect("A1", "zero event missing", ())
    space = items[0].space
    for e in items[1:]:
        if e.space != space:
            raise SpaceMismatchError("logic members reference different state spaces")
    masks: dict[int, Event] = {}
    for e in items:
        try:
            masks.setdefault(event_mask(e), e)
        except NotTwoValuedError:
            return LogicDefect("two-valued", "member is not two-valued", (e,))
    full = (1 << space.size) - 1
    if 0 not in masks:
        return LogicDefect("A1", "zero event missing", ())
    for m in sorted(masks):
        if (m ^ full) not in masks:
            return LogicDefect("A2", "complement missing", (masks[m],))
    for a in sorted(masks):
        for b in sorted(masks):
            if a < b and a & b == 0 and (a | b) not in masks:
                return LogicDefect(
                    "A3", "orthogonal sum missing", (masks[a], masks[b])
                )
    return None


def is_concrete_logic(events: Iterable[Event]) -> bool:
    return check_concrete_logic(events) is None


@dataclass(frozen=True, slots=True)
class CommuteWitness:
    """An element a with a <= f <= a + g <= 1."""

    a: Event
    f: Event
    g: Event


def commutation_chain_holds(a: Event, f: Event, g: Event) -> bool:
    """Check a <= f <= a + g <= 1 pointwise within tolerance."""
    eps = get_eps()
    if not leq(a, f):
        return False
    for fv, av, gv in zip(f.values, a.values, g.values):
        s = av + gv
        if fv > s + eps or s > 1.0 + eps:
            return False
    return True


def _witness_candidate(f: Event, g: Event) -> Event:
    # the chain forces a(s) = 1 exactly where f(s)=1 and g(s)=0
    return pointwise_min([f, complement(g)])


def commute_witness(
    logic: ConcreteLogic | Iterable[Event], f: Event, g: Event
) -> CommuteWitness | None:
    """Find a in P with a <= f <= a + g <= 1, or None.

    For two-valued f and g the witness is forced pointwise to the minimum
    of f and the complement of g, so only membership is checked. For
    general members the search is exhaustive over P.
    """
    if isinstance(logic, ConcreteLogic):
        members = None
        contains = logic.contains
        space = logic.space
    else:
        members = list(logic)
        if not members:
            raise ValueError("empty member set")
        space = members[0].space

        def contains(p: Event) -> bool:
            return any(approx_equal(p, e) for e in members)

    for name, item in (("f", f), ("g", g)):
        if item.space != space:
            raise SpaceMismatchError(f"{name} uses a different state space")
        if not contains(item):
            raise NotInLogicError(f"{name} is not a member of the logic")

    if is_two_valued(f) and is_two_valued(g):
        candidate = _witness_candidate(f, g)
        if contains(candidate):
            return CommuteWitness(a=candidate, f=f, g=g)
        return None

    assert members is not None  # a ConcreteLogic only has two-valued members
    for a in members:
        if commutation_chain_holds(a, f, g):
            return CommuteWitness(a=a, f=f, g=g)
    return None


@dataclass(slots=True)
class BooleanVerdict:
    """Outcome of the minima criterion on one family."""

    boolean: bool
    missing_minimum: tuple[int, ...] | None
    witnesses: dict[str, Event] | None


def _lex_subsets(n: int) -> list[tuple[int, ...]]:
    subsets = []
    for mask in range(1, 1 << n):
        subsets.append(tuple(i + 1 for i in range(n) if mask & (1 << i)))
    subsets.sort()
    return subsets


def boolean_by_minima(logic: ConcreteLogic, family: EventFamily) -> BooleanVerdict:
    """Minima criterion: the family is Boolean in P iff every non-empty
    subfamily's pointwise minimum belongs to P. Supported for n in
    {2, 3, 4}; the first missing subset in lexicographic order is
    reported. On success witnesses for the commutation chains are
    built from the minima table.
    """
    n = family.n
    if n not in (2, 3, 4):
        raise NumericalEventError(f"n outside {{2,3,4}}: {n}")
    if family.space != logic.space:
        raise SpaceMismatchError("family uses a different state space")
    member_masks = []
    for p in family:
        m = event_mask(p)
        if not logic.contains_mask(m):
            raise NotInLogicError("family member not in the logic")
        member_masks.append(m)
    minima: dict[int, int] = {}
    for subset in _lex_subsets(n):
        meet = (1 << logic.space.size) - 1
        for i in subset:
            meet &= member_masks[i - 1]
        if not logic.contains_mask(meet):
            return BooleanVerdict(boolean=False, missing_minimum=subset, witnesses=None)
        subset_mask = 0
        for i in subset:
            subset_mask |= 1 << (i - 1)
        minima[subset_mask] = meet
    table = CorrelationTable.build(
        logic.space,
        n,
        {m: mask_event(meet, logic.space) for m, meet in minima.items()},
    )
    witnesses = witnesses_from_correlations(table)
    return BooleanVerdict(boolean=True, missing_minimum=None, witnesses=witnesses)


def _regions_by_signature(member_masks: list[int], size: int) -> list[int]:
    regions: dict[tuple[int, ...], int] = {}
    for k in range(size):
        sig = tuple((m >> k) & 1 for m in member_masks)
        regions[sig] = regions.get(sig, 0) | (1 << k)
    return list(regions.values())


class _Budget:
    __slots__ = ("left",)

    def __init__(self, budget: int) -> None:
        self.left = budget

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceededError("budget exceeded")


def _partition_region(region: int, masks: list[int], budget: _Budget) -> bool:
    if region == 0:
        return True
    budget.spend()
    low = region & -region
    for m in masks:
        if m & low and m & ~region == 0:
            if _partition_region(region ^ m, masks, budget):
                return True
    return False


def _oracle_two_valued(
    member_masks: list[int], family_masks: list[int], size: int, budget: _Budget
) -> bool:
    # atoms of any admissible decomposition respect the family's
    # coordinate min-terms, so each signature region partitions on its own
    candidates = sorted(set(member_masks) - {0})
    for region in _regions_by_signature(family_masks, size):
        usable = [m for m in candidates if m & ~region == 0]
        if not _partition_region(region, usable, budget):
            return False
    return True


def _sums_to(target: Event, atoms: list[Event], budget: _Budget) -> bool:
    eps = get_eps()
    size = target.space.size

    def walk(idx: int, acc: tuple[float, ...]) -> bool:
        if all(abs(a - t) <= eps for a, t in zip(acc, target.values)):
            return True
        if idx == len(atoms):
            return False
        budget.spend()
        nxt = tuple(a + v for a, v in zip(acc, atoms[idx].values))
        if all(v <= t + eps for v, t in zip(nxt, target.values)):
            if walk(idx + 1, nxt):
                return True
        return walk(idx + 1, acc)

    return walk(0, (0.0,) * size)


def _oracle_general(
    members: list[Event], family: EventFamily, budget: _Budget
) -> bool:
    eps = get_eps()
    space = members[0].space
    pool = [e for e in members if any(v > eps for v in e.values)]
    pool.sort(key=lambda e: e.values)
    ones = (1.0,) * space.size

    def extend(idx: int, chosen: list[Event], acc: tuple[float, ...]) -> bool:
        if all(abs(a - 1.0) <= eps for a in acc):
            return all(_sums_to(p, chosen, budget) for p in family)
        if idx == len(pool):
            return False
        budget.spend()
        cand = pool[idx]
        nxt = tuple(a + v for a, v in zip(acc, cand.values))
        if all(v <= o + eps for v, o in zip(nxt, ones)):
            chosen.append(cand)
            if extend(idx + 1, chosen, nxt):
                return True
            chosen.pop()
        return extend(idx + 1, chosen, acc)

    return extend(0, [], (0.0,) * space.size)


def boolean_oracle(
    members: ConcreteLogic | Iterable[Event],
    family: EventFamily,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
    member_cap: int = DEFAULT_MEMBER_CAP,
) -> bool:
    """Independent Boolean test by direct search for an atom decomposition.

    True iff some pairwise-orthogonal non-zero members of P sum to 1 with
    every family member equal to the sum of a subfamily. Two-valued sets
    run an exact-cover search refined by the family's coordinate
    min-terms; mixed sets fall back to numeric backtracking. Exceeding
    the node budget raises instead of guessing.
    """
    items = list(members.events) if isinstance(members, ConcreteLogic) else list(members)
    if not items:
        raise ValueError("empty member set")
    if len(items) > member_cap:
        raise BudgetExceededError(f"budget exceeded: |P| > {member_cap}")
    space = items[0].space
    for e in items[1:]:
        if e.space != space:
            raise SpaceMismatchError("members reference different state spaces")
    if family.space != space:
        raise SpaceMismatchError("family uses a different state space")
    tracker = _Budget(budget)
    if all(is_two_valued(e) for e in items):
        member_masks = [event_mask(e) for e in items]
        mask_set = set(member_masks)
        family_masks = []
        for p in family:
            m = event_mask(p)
            if m not in mask_set:
                raise NotInLogicError("family member not in P")
            family_masks.append(m)
        return _oracle_two_valued(member_masks, family_masks, space.size, tracker)
    for p in family:
        if not any(approx_equal(p, e) for e in items):
            raise NotInLogicError("family member not in P")
    return _oracle_general(items, family, tracker)
