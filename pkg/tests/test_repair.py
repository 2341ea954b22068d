from __future__ import annotations

import numpy as np
import pytest

from kb_cleanser.kb.conflict_join import ConflictPair
from kb_cleanser.kb.kb_core import parse_triples
from kb_cleanser.kb.repair import (
    ClassifiedRelation, MIN_WEIGHT_COLUMNS, RelationVerdict, RepairThresholds, Verdict,
    apply_repairs, classify, classify_pair, classify_pairs, differential_report,
)
from kb_cleanser.utils.status_exception import ContractViolation


BIRD_FISH = ConflictPair("bird", "fish", frozenset({"hamming"}), hamming_distance=40)


def test_turkey_is_an_error_on_the_light_side():
    assert classify("turkey", 211, 1) == RelationVerdict(Verdict.ERROR, "b")
    assert classify("turkey", 1, 211) == RelationVerdict(Verdict.ERROR, "a")


def test_maple_is_suspicious():
    assert classify("maple", 1, 1) == RelationVerdict(Verdict.SUSPICIOUS)


def test_both_heavy_is_a_homonym():
    assert classify("apple", 500, 300) == RelationVerdict(Verdict.HOMONYM)


def test_middle_weights_are_indeterminate():
    assert classify("x", 50, 50) == RelationVerdict(Verdict.INDETERMINATE)
    assert classify("x", 150, 5) == RelationVerdict(Verdict.INDETERMINATE)
    assert classify("x", 100, 1) == RelationVerdict(Verdict.INDETERMINATE)


def test_weights_must_be_positive():
    with pytest.raises(ContractViolation):
        classify("x", 0, 4)


def _grid():
    return np.unique(np.geomspace(1, 10 ** 6, 100).astype(int)).tolist()


def test_verdicts_partition_the_weight_grid():
    t = RepairThresholds()
    for w_a in _grid():
        for w_b in _grid():
            high, small = max(w_a, w_b), min(w_a, w_b)
            regions = {
                Verdict.ERROR: high > t.big and small < t.low,
                Verdict.HOMONYM: small > t.big,
                Verdict.SUSPICIOUS: high < t.low,
            }
            regions[Verdict.INDETERMINATE] = not any(regions.values())
            assert sum(regions.values()) == 1
            assert regions[classify("i", w_a, w_b, t).kind]


def test_classification_is_symmetric():
    swap = {"a": "b", "b": "a", None: None}
    for w_a in _grid()[::5]:
        for w_b in _grid()[::5]:
            forward, backward = classify("i", w_a, w_b), classify("i", w_b, w_a)
            assert forward.kind == backward.kind
            assert forward.side == swap[backward.side]


def test_ties_are_never_errors():
    for w in _grid():
        assert classify("i", w, w).kind is not Verdict.ERROR


def test_raising_big_never_creates_errors():
    for w_a in _grid()[::3]:
        for w_b in _grid()[::3]:
            for big in (100, 200, 1000):
                before = classify("i", w_a, w_b, RepairThresholds(big, 5)).kind
                after = classify("i", w_a, w_b, RepairThresholds(big * 2, 5)).kind
                assert not (before is not Verdict.ERROR and after is Verdict.ERROR)


def test_differential_gate():
    gated = RepairThresholds(100, 5, min_differential=300)
    assert classify("turkey", 211, 1, gated).kind is Verdict.INDETERMINATE
    assert classify("turkey", 401, 1, gated) == RelationVerdict(Verdict.ERROR, "b")


@pytest.mark.parametrize("big, low, gate", [(5, 5, 0), (4, 5, 0), (100, 0, 0), (100, 5, -1)])
def test_thresholds_validation(big, low, gate):
    with pytest.raises(ContractViolation):
        RepairThresholds(big, low, gate).validate()


def test_classify_pair_covers_the_intersection(toy_kb):
    relations = classify_pair(BIRD_FISH, toy_kb)
    assert [(r.instance, r.weight_a, r.weight_b, r.verdict.kind) for r in relations] == [
        ("maple", 1, 1, Verdict.SUSPICIOUS),
        ("turkey", 211, 1, Verdict.ERROR),
    ]


def test_classify_pair_of_disjoint_concepts_is_empty():
    kb = parse_triples(["a\tx\t1", "b\ty\t1"])
    assert classify_pair(ConflictPair("a", "b", frozenset({"jaccard"}), jaccard_estimate=0.0), kb) == []


def test_classify_pair_with_unknown_concept(toy_kb):
    with pytest.raises(ContractViolation):
        classify_pair(ConflictPair("bird", "zebra", frozenset({"jaccard"}), jaccard_estimate=0.0), toy_kb)


def test_turkey_is_removed_from_fish_only(toy_kb):
    output = apply_repairs(toy_kb, classify_pair(BIRD_FISH, toy_kb))
    repaired = output.repaired
    assert len(repaired) == len(toy_kb) - 1
    assert ("fish", "turkey") not in repaired
    assert repaired.weight("bird", "turkey") == 211
    assert output.errors == [("fish", "turkey", 1, "bird", 211)]
    assert output.suskb == [
        ("bird", "maple", 1, "fish", 1, "suspicious"),
        ("fish", "maple", 1, "bird", 1, "suspicious"),
    ]
    assert output.homonyms == []


def test_repairs_are_idempotent(toy_kb):
    first = apply_repairs(toy_kb, classify_pairs([BIRD_FISH], toy_kb))
    second = apply_repairs(first.repaired, classify_pairs([BIRD_FISH], first.repaired))
    assert second.removed == set()
    assert second.repaired.triples == first.repaired.triples


def test_homonyms_keep_the_kb_intact():
    kb = parse_triples(["fruit\tapple\t500", "company\tapple\t300", "fruit\tpear\t9", "company\tibm\t70"])
    pair = ConflictPair("company", "fruit", frozenset({"hamming"}), hamming_distance=50)
    output = apply_repairs(kb, classify_pair(pair, kb))
    assert output.repaired.triples == kb.triples
    assert output.homonyms == [("apple#company", 300), ("apple#fruit", 500)]


def test_indeterminate_rows_are_flagged():
    kb = parse_triples(["a\tx\t50", "b\tx\t50"])
    pair = ConflictPair("a", "b", frozenset({"hamming"}), hamming_distance=50)
    output = apply_repairs(kb, classify_pair(pair, kb))
    assert {row[-1] for row in output.suskb} == {"indeterminate"}
    assert len(output.repaired) == 2


def test_classification_of_a_missing_triple(toy_kb):
    ghost = ClassifiedRelation("ghost", BIRD_FISH, 211, 1, RelationVerdict(Verdict.ERROR, "b"))
    with pytest.raises(ContractViolation):
        apply_repairs(toy_kb, [ghost])


def test_classify_pairs_with_workers_matches_serial(small_synthetic):
    kb = small_synthetic.kb
    concepts = sorted(kb.concept_index)
    pairs = [
        ConflictPair(a, b, frozenset({"jaccard"}), jaccard_estimate=0.0)
        for i, a in enumerate(concepts) for b in concepts[i + 1:]
    ]
    assert classify_pairs(pairs, kb, workers=2) == classify_pairs(pairs, kb)


def test_differential_report_of_turkey(toy_kb):
    report = differential_report(classify_pair(BIRD_FISH, toy_kb))
    assert list(report.index) == ["100-500", "500-1000", "1000-1500", "1500-2000", ">2000"]
    assert list(report.columns) == MIN_WEIGHT_COLUMNS
    assert report.loc["100-500", "1"] == 1
    assert int(report.values.sum()) == 1


def test_differential_report_of_nothing_is_all_zero():
    assert int(differential_report([]).values.sum()) == 0


def test_differential_report_counts_every_large_difference():
    kb = parse_triples(["a\tx\t3000", "b\tx\t1", "a\ty\t700", "b\ty\t20", "a\tz\t50", "b\tz\t1"])
    pair = ConflictPair("a", "b", frozenset({"hamming"}), hamming_distance=50)
    report = differential_report(classify_pair(pair, kb))
    assert report.loc[">2000", "1"] == 1
    assert report.loc["500-1000", ">10"] == 1
    assert int(report.values.sum()) == 2


def test_differential_bands_must_be_ordered():
    with pytest.raises(ContractViolation):
        differential_report([], bands=[(100, 600), (500, 1000)])
