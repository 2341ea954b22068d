# -----------------------------------------------------------------------------
# License:
# Copyright (c) 2025 Gecosistema S.r.l.
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
# OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
# NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
# HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
# WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
# FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
#
# Name:        synthetic.py
# Purpose:     seeded synthetic KBs with planted errors and homonyms
#
# Author:      Luzzi Valerio
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

import os
from dataclasses import dataclass, field, asdict

import numpy as np

from ..cli.module_log import Logger
from ..utils import filesystem
from ..utils.status_exception import ContractViolation
from .kb_core import KnowledgeBase, Triple, TRIPLE_COLUMNS
from .repair import RepairThresholds
from .signatures import DEFAULT_SEED

KB_FILE = "kb.tsv"
GROUND_TRUTH_FILE = "ground_truth.tsv"
HOMONYM_TRUTH_FILE = "homonym_truth.tsv"


@dataclass(frozen=True)
class SynthSpec:
    """
    SynthSpec - shape of a synthetic KB

    Weights: exactly round(weight_one_share * n) triples weigh 1, the others follow a power law
    truncated to [2, max_weight]. Planted errors copy an instance of a heavy triple (weight > big)
    into another concept with a weight below low; homonyms copy one with a weight above big.
    When fewer than round(heavy_share * n) triples are heavy, the heaviest of the others are
    raised by big so that plants spread over that many source instances.
    """
    concepts: int = 200
    min_instances: int = 80
    max_instances: int = 120
    weight_one_share: float = 0.653
    power_exponent: float = 1.5
    max_weight: int = 10000
    error_rate: float = 0.01
    homonym_rate: float = 0.002
    heavy_share: float = 0.01
    big: int = 100
    low: int = 5
    seed: int = DEFAULT_SEED

    def validate(self):
        for name in ("weight_one_share", "error_rate", "homonym_rate", "heavy_share"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ContractViolation(f"{name} must be in [0, 1], got {value}")
        if self.concepts < 2:
            raise ContractViolation("at least two concepts are required")
        if not 1 <= self.min_instances <= self.max_instances:
            raise ContractViolation("instances per concept must satisfy 1 <= min <= max")
        if self.power_exponent <= 0:
            raise ContractViolation("power_exponent must be positive")
        RepairThresholds(self.big, self.low).validate()
        if self.max_weight <= self.big:
            raise ContractViolation("max_weight must exceed big")
        return self

    def to_dict(self):
        return asdict(self)


@dataclass
class SyntheticKB:
    """
    SyntheticKB - the generated KB with its planted wrong triples and homonym senses
    """
    spec: SynthSpec
    kb: KnowledgeBase
    planted: list = field(default_factory=list)
    homonyms: list = field(default_factory=list)

    def write(self, output_dir):
        """
        write - kb.tsv, ground_truth.tsv and homonym_truth.tsv into output_dir
        """
        filesystem.mkdirs(output_dir)
        files = {
            KB_FILE: self.kb.triples,
            GROUND_TRUTH_FILE: self.planted,
            HOMONYM_TRUTH_FILE: self.homonyms,
        }
        written = []
        for name, triples in files.items():
            filename = os.path.join(output_dir, name)
            filesystem.write_tsv(filename, TRIPLE_COLUMNS, ((t.concept, t.instance, t.weight) for t in triples))
            written.append(filename)
        return written


def concept_name(index):
    return f"c{index + 1:04d}"


def instance_name(concept, index):
    return f"{concept}-e{index + 1:04d}"


def power_law_weights(rng, count, exponent, lo=2, hi=10000):
    """
    power_law_weights - floored draws of a Pareto law truncated to [lo, hi]
    """
    u = rng.random(count)
    tail = 1.0 - (lo / hi) ** exponent
    draws = lo * (1.0 - u * tail) ** (-1.0 / exponent)
    return np.clip(np.floor(draws), lo, hi).astype(np.int64)


def low_tail_weights(rng, count, low):
    """
    low_tail_weights - weights in [1, low - 1] with P(k) proportional to 1 / k^2
    """
    support = np.arange(1, low)
    p = 1.0 / support.astype(np.float64) ** 2
    return rng.choice(support, size=count, p=p / p.sum())


def _plant(rng, weights, sources, targets, count, weight_sampler):
    planted = []
    attempts = 0
    while len(planted) < count and attempts < 50 * max(count, 1):
        attempts += 1
        concept, instance = sources[rng.integers(len(sources))]
        target = targets[rng.integers(len(targets))]
        if target == concept or (target, instance) in weights:
            continue
        weight = int(weight_sampler())
        weights[(target, instance)] = weight
        planted.append(Triple(target, instance, weight))
    return planted


def generate_synthetic(spec: SynthSpec = SynthSpec()) -> SyntheticKB:
    """
    generate_synthetic - build a seeded KB with disjoint concept vocabularies, then plant errors and homonyms
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)

    # DOC: disjoint vocabularies
    keys = []
    concepts = [concept_name(i) for i in range(spec.concepts)]
    for concept in concepts:
        size = int(rng.integers(spec.min_instances, spec.max_instances, endpoint=True))
        keys.extend((concept, instance_name(concept, j)) for j in range(size))

    # DOC: exact weight-1 share, power law elsewhere
    n = len(keys)
    values = power_law_weights(rng, n, spec.power_exponent, 2, spec.max_weight)
    ones = rng.permutation(n)[:round(spec.weight_one_share * n)]
    values[ones] = 1
    weights = {key: int(w) for key, w in zip(keys, values)}

    heavy = sorted(key for key, w in weights.items() if w > spec.big)
    wanted_errors = round(spec.error_rate * n)
    wanted_homonyms = round(spec.homonym_rate * n)
    wanted_sources = max(round(spec.heavy_share * n), 1) if (wanted_errors or wanted_homonyms) else 0
    if len(heavy) < wanted_sources:
        lighter = sorted((k for k, w in weights.items() if w <= spec.big), key=lambda k: (-weights[k], k))
        promoted = lighter[:wanted_sources - len(heavy)]
        for key in promoted:
            weights[key] = min(weights[key] + spec.big, spec.max_weight)
        heavy = sorted(heavy + promoted)
        Logger.info("promoted %d triples above big, %d plant sources", len(promoted), len(heavy))

    # DOC: planted errors then homonyms
    planted = _plant(rng, weights, heavy, concepts, wanted_errors,
                     lambda: low_tail_weights(rng, 1, spec.low)[0])
    homonyms = _plant(rng, weights, heavy, concepts, wanted_homonyms,
                      lambda: rng.integers(spec.big + 1, 5 * spec.big))

    if len(planted) < wanted_errors or len(homonyms) < wanted_homonyms:
        Logger.warning("planted %d/%d errors and %d/%d homonyms", len(planted), wanted_errors, len(homonyms), wanted_homonyms)
    Logger.debug(f"synthetic KB: {len(weights)} triples, {len(planted)} errors, {len(homonyms)} homonyms")
    return SyntheticKB(spec, KnowledgeBase(weights), sorted(planted), sorted(homonyms))
