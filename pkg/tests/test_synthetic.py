from __future__ import annotations

import pytest

from kb_cleanser.kb.kb_core import read_kb
from kb_cleanser.kb.oracle import read_triple_keys
from kb_cleanser.kb.synthetic import (
    GROUND_TRUTH_FILE, HOMONYM_TRUTH_FILE, KB_FILE, SynthSpec,
    concept_name, generate_synthetic, instance_name,
)
from kb_cleanser.utils.status_exception import ContractViolation


def _owner(instance):
    return instance.split("-")[0]


def test_names():
    assert concept_name(0) == "c0001"
    assert instance_name("c0001", 0) == "c0001-e0001"


def test_generation_is_deterministic(small_synthetic):
    again = generate_synthetic(SynthSpec(concepts=40, min_instances=20, max_instances=30, seed=11))
    assert again.kb.triples == small_synthetic.kb.triples
    assert again.planted == small_synthetic.planted
    assert again.homonyms == small_synthetic.homonyms


def test_seed_changes_the_kb(small_synthetic):
    other = generate_synthetic(SynthSpec(concepts=40, min_instances=20, max_instances=30, seed=12))
    assert other.kb.triples != small_synthetic.kb.triples


def test_no_errors_when_the_rate_is_zero():
    data = generate_synthetic(SynthSpec(concepts=20, min_instances=10, max_instances=10, error_rate=0.0, homonym_rate=0.0))
    assert data.planted == []
    assert data.homonyms == []
    assert len(data.kb) == 200


def test_weight_one_share():
    data = generate_synthetic(SynthSpec(error_rate=0.0, homonym_rate=0.0, seed=3))
    weights = [t.weight for t in data.kb.triples]
    share = sum(1 for w in weights if w == 1) / len(weights)
    assert share == pytest.approx(0.653, abs=0.01)
    assert max(weights) <= 10000


def test_homonym_count_follows_the_rate():
    data = generate_synthetic(SynthSpec(concepts=100, min_instances=100, max_instances=100, homonym_rate=0.01, seed=5))
    assert len(data.homonyms) == 100
    assert len(data.planted) == 100


def test_planted_errors_are_light_copies_of_heavy_triples(synthetic):
    kb, spec = synthetic.kb, synthetic.spec
    assert synthetic.planted
    for triple in synthetic.planted:
        assert triple.weight < spec.low
        assert triple.concept != _owner(triple.instance)
        assert kb.weight(_owner(triple.instance), triple.instance) > spec.big
        assert kb.weight(triple.concept, triple.instance) == triple.weight


def test_homonyms_are_heavy_on_both_sides(synthetic):
    kb, spec = synthetic.kb, synthetic.spec
    for triple in synthetic.homonyms:
        assert spec.big < triple.weight < 5 * spec.big
        assert kb.weight(_owner(triple.instance), triple.instance) > spec.big


def test_a_heavy_source_is_promoted_when_none_exists():
    spec = SynthSpec(concepts=3, min_instances=4, max_instances=4, power_exponent=50.0,
                     error_rate=1 / 6, homonym_rate=0.0, seed=1)
    data = generate_synthetic(spec)
    heavy = [t for t in data.kb.triples if t.weight > spec.big]
    assert len(heavy) == 1
    assert spec.big < heavy[0].weight <= 2 * spec.big
    assert len(data.planted) == 2
    assert {t.instance for t in data.planted} == {heavy[0].instance}


def test_plants_spread_over_the_heavy_pool(synthetic):
    spec = synthetic.spec
    plants = synthetic.planted + synthetic.homonyms
    generated = len(synthetic.kb) - len(plants)
    sources = [t for t in synthetic.kb.triples if t.weight > spec.big and _owner(t.instance) == t.concept]
    assert len(sources) >= round(spec.heavy_share * generated)
    assert len({t.instance for t in plants}) >= 100


@pytest.mark.parametrize("changes", [
    {"error_rate": 1.5},
    {"heavy_share": 2.0},
    {"weight_one_share": -0.1},
    {"concepts": 1},
    {"min_instances": 10, "max_instances": 5},
    {"big": 5, "low": 5},
    {"max_weight": 100},
    {"power_exponent": 0.0},
])
def test_invalid_specs(changes):
    with pytest.raises(ContractViolation):
        generate_synthetic(SynthSpec(**changes))


def test_written_files_read_back(small_synthetic, small_synthetic_dir):
    assert read_kb(str(small_synthetic_dir / KB_FILE)).triples == small_synthetic.kb.triples
    assert read_triple_keys(str(small_synthetic_dir / GROUND_TRUTH_FILE)) == {
        (t.concept, t.instance) for t in small_synthetic.planted
    }
    assert (small_synthetic_dir / HOMONYM_TRUTH_FILE).read_text(encoding="utf-8").startswith("# concept\tinstance\tweight")
