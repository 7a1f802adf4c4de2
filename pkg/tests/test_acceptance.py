"""End-to-end checks for the package's headline guarantees.

One test per guarantee, in a fixed order, each emitting a single
ACCEPTANCE line (visible under -s or on failure).  Tolerances and
runtime budgets are pinned here on purpose: loosening them is a
behaviour change, not a test tweak.
"""

import functools
import itertools
import json
import random
import time

import pytest

from numevents import (
    CorrelationTable,
    EMBEDDABLE,
    Event,
    EventFamily,
    NOT_EMBEDDABLE,
    SetFunction,
    boolean_by_minima,
    boolean_oracle,
    check_bell_like,
    classify_embedding,
    commutation_chain_holds,
    complement_of_full,
    enumerate_01_valuations,
    evaluate_inequality,
    f_transform,
    g_transform,
    gen_boolean_algebra,
    gfe_closure,
    is_bell_valuation,
    mask_event,
    pair_inequality,
    sum_all_elementary,
    witness_relations,
    witnesses_from_correlations,
)
from numevents.cli import main

from helpers import random_logic, nontrivial_masks, space
from test_cli import GOLDEN_CASES, data, golden


def checkpoint(num, label):
    """Print one verdict line per criterion, then let pytest judge."""

    def deco(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {num:02d} {label}: FAIL")
                raise
            print(f"ACCEPTANCE {num:02d} {label}: PASS")

        return run

    return deco


def ev(*values):
    return Event(tuple(float(v) for v in values), space(len(values)))


@checkpoint(1, "valuation enumeration counts")
def test_01_enumeration_counts():
    start = time.perf_counter()
    assert sum(1 for _ in enumerate_01_valuations(2)) == 7
    assert sum(1 for _ in enumerate_01_valuations(3)) == 127
    small = time.perf_counter() - start
    assert small < 1.0

    start = time.perf_counter()
    assert sum(1 for _ in enumerate_01_valuations(4)) == 2**15 - 1
    assert time.perf_counter() - start < 10.0


@checkpoint(2, "transforms invert each other")
def test_02_transform_inversion():
    worst = 0.0
    for n in (2, 3, 4):
        rng = random.Random(777 + n)
        size = 2**n - 1
        for _ in range(1000):
            h = SetFunction(n, tuple(rng.uniform(-3.0, 3.0) for _ in range(size)))
            back_fg = f_transform(g_transform(h))
            back_gf = g_transform(f_transform(h))
            for a, b in zip(back_fg.values, h.values):
                worst = max(worst, abs(a - b))
            for a, b in zip(back_gf.values, h.values):
                worst = max(worst, abs(a - b))
    assert worst <= 1e-9


@checkpoint(3, "closed-form identities")
def test_03_closed_form_identities():
    # sum of all elementary valuations, n=3: the alternating-sign combination
    assert sum_all_elementary(3).values == (1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0)

    for n in range(2, 7):
        full = 2**n - 1
        near_full = SetFunction(
            n, tuple(0.0 if mask == full else 1.0 for mask in range(1, full + 1))
        )
        closed = complement_of_full(n)
        assert closed.values == f_transform(near_full).values
        assert closed.value(full) == -1.0 - (-1.0) ** n


@checkpoint(4, "worked n=3 valuation fixture")
def test_04_worked_valuation_fixture():
    # +1 on {1} and {2,3}, -1 on {1,2} and {1,3}, zero elsewhere
    f = SetFunction(3, (1.0, 0.0, -1.0, 0.0, -1.0, 1.0, 0.0))
    g = g_transform(f)
    for mask in range(1, 8):
        assert g.value(mask) == (1.0 if mask in (0b001, 0b110) else 0.0)
    assert is_bell_valuation(f)


@checkpoint(5, "minima criterion matches the oracle")
def test_05_minima_criterion_matches_oracle():
    start = time.perf_counter()

    # mandatory negative instance: even-cardinality sets over four states
    sp4 = space(4)
    even = gfe_closure([mask_event(0b0011, sp4), mask_event(0b0101, sp4)], sp4)
    even_pair = EventFamily((mask_event(0b0011, sp4), mask_event(0b0101, sp4)))
    assert boolean_by_minima(even, even_pair).boolean is False
    assert boolean_oracle(even, even_pair) is False

    checked = 0
    for seed in range(104):
        logic = random_logic(seed, 2 + seed % 4, 1 + seed % 3)
        masks = nontrivial_masks(logic)
        pairs = list(itertools.combinations(masks, 2))
        if len(pairs) > 60:
            pairs = random.Random(seed).sample(pairs, 60)
        triples = list(itertools.islice(itertools.combinations(masks, 3), 20))
        for group in itertools.chain(pairs, triples):
            family = EventFamily(tuple(mask_event(m, logic.space) for m in group))
            verdict = boolean_by_minima(logic, family)
            assert verdict.boolean == boolean_oracle(logic, family)
            checked += 1
    assert checked > 0
    assert time.perf_counter() - start < 60.0


def _generated_tables():
    """200 classical measure algebras with tables for n = 2, 3, 4."""
    for seed in range(200):
        k = 2 + seed % 5
        num_states = 2 + seed % 4
        algebra = gen_boolean_algebra(k=k, num_states=num_states, seed=seed)
        for n in (2, 3, 4):
            rng = random.Random(1000 + 7 * seed + n)
            generators = [rng.randrange(1, 2**k) for _ in range(n)]
            yield n, algebra.correlation_table(generators)


@checkpoint(6, "classical tables satisfy every bound")
def test_06_classical_tables_satisfy_all_bounds():
    for n, tab in _generated_tables():
        assert all(not row.violated for row in check_bell_like(tab))
        if n <= 3:
            for f in enumerate_01_valuations(n):
                assert not evaluate_inequality(f, tab).violated


@checkpoint(7, "deep violation is detected")
def test_07_deep_violation_detected(capsys, monkeypatch):
    monkeypatch.delenv("NUMEVENT_EPS", raising=False)
    sp1 = space(1)
    flat = CorrelationTable(
        sp1,
        3,
        {m: Event((0.5 if m.bit_count() == 1 else 0.0,), sp1) for m in range(1, 8)},
    )
    for i, j in ((1, 2), (1, 4), (2, 4)):
        row = evaluate_inequality(pair_inequality(i, j, 3), flat)
        assert row.max_value == 1.0
        assert not row.violated

    deep = evaluate_inequality(sum_all_elementary(3), flat)
    assert deep.max_value == 1.5
    assert deep.violated

    assert main(["bell", data("chsh3.csv"), "--all-valuations"]) == 2
    capsys.readouterr()


@checkpoint(8, "embeddability verdicts")
def test_08_embeddability_verdicts():
    for delta in (0.1, 0.3, 0.7):
        report = classify_embedding(
            EventFamily((ev(delta, 1.0 - delta), ev(0.6, 0.4)))
        )
        assert report.verdict == EMBEDDABLE
        assert str(report.container) == "MO_2"

    comparable = classify_embedding(EventFamily((ev(0.2, 0.6), ev(0.3, 0.8))))
    assert comparable.verdict == NOT_EMBEDDABLE

    sp4 = space(4)
    for group in ((0b0011,), (0b0011, 0b0101), (0b0011, 0b0101, 0b1001)):
        two_valued = EventFamily(tuple(mask_event(m, sp4) for m in group))
        assert classify_embedding(two_valued).verdict == EMBEDDABLE


@checkpoint(9, "witness chains hold on generated tables")
def test_09_witness_chains_hold():
    seen_n4_names = set()
    for n, tab in _generated_tables():
        witnesses = witnesses_from_correlations(tab)
        relations = witness_relations(n)
        assert set(witnesses) == {name for name, _, _ in relations}
        for name, i_mask, j_mask in relations:
            assert commutation_chain_holds(
                witnesses[name], tab.event(i_mask), tab.event(j_mask)
            )
        if n == 4:
            seen_n4_names.update(witnesses)
    assert len(seen_n4_names) == 16


@checkpoint(10, "command line output is deterministic")
def test_10_cli_determinism(capsys, monkeypatch):
    monkeypatch.delenv("NUMEVENT_EPS", raising=False)
    for name, argv, code in GOLDEN_CASES:
        assert main(argv) == code
        first = capsys.readouterr().out
        assert first == golden(name)
        assert main(argv) == code
        assert capsys.readouterr().out == first

    # the two output formats must agree on every verdict
    for source in ("polarizer.csv", "comparable_pair.csv", "two_valued.csv", "undecided.csv"):
        code_text = main(["classify", data(source)])
        text = capsys.readouterr().out
        code_json = main(["--format", "json", "classify", data(source)])
        payload = json.loads(capsys.readouterr().out)
        assert code_text == code_json
        assert f"verdict: {payload['verdict']}" in text

    for source in ("even_logic.json", "power_logic.json"):
        code_text = main(["boolean", data(source)])
        text = capsys.readouterr().out
        code_json = main(["--format", "json", "boolean", data(source)])
        payload = json.loads(capsys.readouterr().out)
        assert code_text == code_json
        expected = "verdict: Boolean" if payload["boolean"] else "verdict: not Boolean"
        assert expected in text

    for argv in (
        ["bell", data("chsh3.csv")],
        ["bell", data("chsh3.csv"), "--all-valuations"],
        ["bell", data("boolean_n4.csv")],
        ["bell", data("pairs_n2.csv")],
    ):
        code_text = main(argv)
        text = capsys.readouterr().out
        code_json = main(["--format", "json"] + argv)
        payload = json.loads(capsys.readouterr().out)
        assert code_text == code_json
        assert (payload["violations"] == 0) == ("verdict: no obstruction found" in text)
