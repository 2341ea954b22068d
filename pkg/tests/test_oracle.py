from __future__ import annotations

import itertools

import numpy as np
import pytest

from kb_cleanser.kb.conflict_join import JoinParams, jaccard_join
from kb_cleanser.kb.kb_core import ConceptSet
from kb_cleanser.kb.oracle import (
    EvalReport, evaluate_planted, exact_jaccard, frequency_baseline, naive_conflict_join,
)
from kb_cleanser.kb.signatures import HashFamily, compute_minhashes
from kb_cleanser.utils.status_exception import ContractViolation, RefusalError


def _set(concept, names):
    return ConceptSet(concept, {name: 1 for name in names})


def test_exact_jaccard_examples():
    a = _set("a", "abc")
    assert exact_jaccard(a, _set("b", "abc")) == 1.0
    assert exact_jaccard(a, _set("b", "xyz")) == 0.0
    assert exact_jaccard(a, _set("b", "bcd")) == 0.5


def test_exact_jaccard_of_empty_set():
    with pytest.raises(ContractViolation):
        exact_jaccard(_set("a", "abc"), ConceptSet("b", {}))


def test_jaccard_distance_is_a_metric():
    rng = np.random.default_rng(17)
    sets = [_set(f"s{k}", [f"i{n}" for n in rng.choice(30, size=int(rng.integers(1, 15)), replace=False)]) for k in range(30)]
    for x, y, z in itertools.islice(itertools.combinations(sets, 3), 2000):
        assert exact_jaccard(x, y) == exact_jaccard(y, x)
        d = lambda p, q: 1.0 - exact_jaccard(p, q)
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-12
    assert exact_jaccard(sets[0], _set("copy", sets[0].members)) == 1.0


def test_naive_join_of_identical_sets_is_empty():
    sets = {"a": _set("a", "xyz"), "b": _set("b", "xyz")}
    assert naive_conflict_join(sets, "jaccard", JoinParams()) == set()


def test_naive_join_refuses_large_inputs():
    sets = {f"c{k}": _set(f"c{k}", [f"i{k}"]) for k in range(5001)}
    with pytest.raises(RefusalError):
        naive_conflict_join(sets, "jaccard", JoinParams(min_set_size=1))


def test_naive_join_needs_signatures_for_hamming():
    with pytest.raises(ContractViolation):
        naive_conflict_join({"a": _set("a", "x")}, "hamming", JoinParams())
    with pytest.raises(ContractViolation):
        naive_conflict_join({"a": _set("a", "x")}, "cosine", JoinParams())


def test_naive_jaccard_join_applies_guard_and_scope():
    sets = {
        "a": _set("a", ["x1", "x2"]),
        "b": _set("b", ["x1", "x2"] + [f"y{k}" for k in range(300)]),
        "c": _set("c", ["x1"] + [f"z{k}" for k in range(300)]),
        "d": _set("d", [f"w{k}" for k in range(300)]),
    }
    found = {p.key for p in naive_conflict_join(sets, "jaccard", JoinParams())}
    assert found == {("a", "c"), ("b", "c")}


def test_fast_jaccard_join_agrees_with_the_naive_join_both_ways():
    sets = {}
    for k in range(60):
        for side in ("bird", "fish"):
            concept = f"{side}{k:02d}"
            sets[concept] = _set(concept, [f"shared{k}"] + [f"{concept}-{n}" for n in range(1000)])
    params = JoinParams()
    signatures = compute_minhashes(sets.values(), HashFamily(seed=31), 128)
    fast = {p.key for p in jaccard_join(signatures.values(), sets, params)}
    exact = {p.key for p in naive_conflict_join(sets, "jaccard", params)}
    assert len(exact) == 60
    assert len(fast - exact) <= 0.05 * len(exact)
    assert len(exact - fast) <= 0.05 * len(exact)


def test_naive_join_agrees_with_the_fast_jaccard_join_on_the_synthetic_kb(synthetic, family):
    params = JoinParams()
    sets = synthetic.kb.concept_index
    signatures = compute_minhashes(sets.values(), family, 128)
    fast = jaccard_join(signatures.values(), sets, params)
    exact = {p.key for p in naive_conflict_join(sets, "jaccard", params)}

    agreeing = [p for p in fast if exact_jaccard(sets[p.concept_a], sets[p.concept_b]) <= params.jaccard_max]
    assert all(p.key in exact for p in agreeing)
    assert len(fast) - len(agreeing) <= 0.05 * max(len(fast), 1)

    # one shared instance in sets of about 100 sits at half of jaccard_max, where a
    # 128-row estimate overshoots about one time in seven
    missed = exact - {p.key for p in fast}
    assert len(exact) >= 150
    assert len(missed) <= 0.25 * len(exact)


def test_evaluate_perfect_detection():
    truth = {("fish", "turkey"), ("fish", "maple")}
    report = evaluate_planted(truth, truth)
    assert (report.precision, report.recall) == (1.0, 1.0)


def test_evaluate_nothing_detected():
    report = evaluate_planted({("fish", "turkey")}, set())
    assert report.recall == 0.0
    assert report.precision is None
    assert report.to_tsv_line() == "0\t0\t1\t\t0.0000"


def test_evaluate_half_precision():
    truth = {("fish", "turkey")}
    detected = [("fish", "turkey", 1), ("bird", "maple", 1)]
    report = evaluate_planted(truth, detected)
    assert report == EvalReport(1, 1, 0)
    assert (report.precision, report.recall) == (0.5, 1.0)
    assert "precision:       0.5000" in report.summary()


def test_frequency_baseline_flags_light_triples(toy_kb):
    assert frequency_baseline(toy_kb) == {("bird", "maple"), ("fish", "turkey"), ("fish", "maple")}
    assert len(frequency_baseline(toy_kb, max_weight=100)) == 5
