"""Independent oracles and deterministic generators shared by the tests.

Everything here recomputes results from first principles (sets, brute
force) so the library is never checked against itself.
"""

import itertools
import random

from numevents import ConcreteLogic, Event, StateSpace, gfe_closure, mask_event

# 1/40 grid keeps comparisons exact: every sum/difference of grid values
# is again a multiple of 0.025, far above float rounding noise.
GRID = tuple(i / 40 for i in range(41))


def space(num_states: int) -> StateSpace:
    return StateSpace(tuple(f"s{i + 1}" for i in range(num_states)))


def closure_oracle(seed_masks, num_states):
    """Fixpoint closure over bitmasks, written set-theoretically."""
    full = (1 << num_states) - 1
    members = {0, full}
    members.update(m for m in seed_masks)
    while True:
        fresh = {m ^ full for m in members}
        for a, b in itertools.combinations(members, 2):
            if a & b == 0:
                fresh.add(a | b)
        if fresh <= members:
            return frozenset(members)
        members |= fresh


def random_logic(seed: int, num_states: int, num_seeds: int) -> ConcreteLogic:
    """Closure of a few random two-valued events, deterministic per seed."""
    rng = random.Random(seed)
    full = (1 << num_states) - 1
    pool = list(range(1, full))
    masks = rng.sample(pool, min(num_seeds, len(pool)))
    sp = space(num_states)
    return gfe_closure([mask_event(m, sp) for m in masks], sp)


def nontrivial_masks(logic: ConcreteLogic) -> list[int]:
    full = (1 << logic.space.size) - 1
    return [m for m in sorted(logic.masks) if m not in (0, full)]


def subset_sums(values, target, eps=1e-9):
    """True iff some subset of values sums to target (brute force)."""
    for r in range(len(values) + 1):
        for combo in itertools.combinations(values, r):
            if abs(sum(combo) - target) <= eps:
                return True
    return False


def direct_g(f_values, n):
    """Subset-sum transform computed by explicit double loop."""
    top = (1 << n) - 1
    out = []
    for mask in range(1, top + 1):
        total = 0.0
        for sub in range(1, top + 1):
            if sub & mask == sub:
                total += f_values[sub - 1]
        out.append(total)
    return out


def direct_f(g_values, n):
    """Alternating-sign inversion computed by explicit double loop."""
    top = (1 << n) - 1
    out = []
    for mask in range(1, top + 1):
        total = 0.0
        for sub in range(1, top + 1):
            if sub & mask == sub:
                sign = -1.0 if (bin(mask ^ sub).count("1") % 2) else 1.0
                total += sign * g_values[sub - 1]
        out.append(total)
    return out


def event_grid(num_states: int, step: int = 8):
    """All events over num_states whose values lie on a coarse grid."""
    levels = [i / step for i in range(step + 1)]
    sp = space(num_states)
    for combo in itertools.product(levels, repeat=num_states):
        yield Event(combo, sp)
