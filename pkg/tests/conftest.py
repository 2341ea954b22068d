from __future__ import annotations

import pytest

from kb_cleanser.kb.kb_core import parse_triples
from kb_cleanser.kb.signatures import HashFamily
from kb_cleanser.kb.synthetic import SynthSpec, generate_synthetic


TOY_LINES = [
    "# concept\tinstance\tweight",
    "bird\tturkey\t211",
    "bird\tmaple\t1",
    "bird\tsparrow\t50",
    "bird\teagle\t120",
    "fish\tturkey\t1",
    "fish\tmaple\t1",
    "fish\tsalmon\t300",
    "fish\ttuna\t80",
]


@pytest.fixture
def toy_kb():
    """bird and fish sharing turkey (211 vs 1) and maple (1 vs 1)."""
    return parse_triples(TOY_LINES)


@pytest.fixture
def family():
    return HashFamily(seed=20141025)


@pytest.fixture(scope="session")
def small_synthetic():
    return generate_synthetic(SynthSpec(concepts=40, min_instances=20, max_instances=30, seed=11))


@pytest.fixture(scope="session")
def synthetic():
    """200 concepts, about 20K triples, 1% planted errors."""
    return generate_synthetic(SynthSpec(seed=7))


@pytest.fixture(scope="session")
def synthetic_dir(synthetic, tmp_path_factory):
    folder = tmp_path_factory.mktemp("synthetic")
    synthetic.write(str(folder))
    return folder


@pytest.fixture(scope="session")
def small_synthetic_dir(small_synthetic, tmp_path_factory):
    folder = tmp_path_factory.mktemp("small_synthetic")
    small_synthetic.write(str(folder))
    return folder
