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
# Name:        repair.py
# Purpose:     weight-based verdicts on conflicting intersections and the repaired KB
#
# Author:      Luzzi Valerio
#
# Created:     15/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import partial

import pandas as pd

from ..cli.module_log import Logger
from ..utils.module_pool import parallel_map, chunked
from ..utils.status_exception import ContractViolation
from .conflict_join import ConflictPair
from .kb_core import KnowledgeBase, intersection


ERROR_COLUMNS = ["concept", "instance", "weight", "other_concept", "other_weight"]
SUSKB_COLUMNS = ERROR_COLUMNS + ["verdict"]
HOMONYM_COLUMNS = ["sense", "weight"]

DIFFERENTIAL_BANDS = ((100, 500), (500, 1000), (1000, 1500), (1500, 2000), (2000, None))
MIN_WEIGHT_COLUMNS = [str(w) for w in range(1, 11)] + [">10"]


class Verdict(str, Enum):
    ERROR = "error"
    HOMONYM = "homonym"
    SUSPICIOUS = "suspicious"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class RepairThresholds:
    """
    RepairThresholds - B (big) and L (low) weight gates plus the optional differential gate
    """
    big: int = 100
    low: int = 5
    min_differential: int = 0

    def validate(self):
        if not int(self.big) > int(self.low) >= 1:
            raise ContractViolation(f"thresholds must satisfy big > low >= 1, got big={self.big} low={self.low}")
        if int(self.min_differential) < 0:
            raise ContractViolation(f"min_differential must be >= 0, got {self.min_differential}")
        return self


@dataclass(frozen=True)
class RelationVerdict:
    """
    RelationVerdict - the verdict, and for an Error the side ('a' or 'b') to delete
    """
    kind: Verdict
    side: str | None = None


@dataclass(frozen=True)
class ClassifiedRelation:
    instance: str
    pair: ConflictPair
    weight_a: int
    weight_b: int
    verdict: RelationVerdict

    @property
    def sort_key(self):
        return (self.pair.concept_a, self.pair.concept_b, self.instance)

    def side(self, which):
        """(concept, weight, other_concept, other_weight) seen from side 'a' or 'b'."""
        if which == "a":
            return self.pair.concept_a, self.weight_a, self.pair.concept_b, self.weight_b
        return self.pair.concept_b, self.weight_b, self.pair.concept_a, self.weight_a


@dataclass
class RepairOutput:
    """
    RepairOutput - repaired KB, removed triples and the three report tables
    """
    repaired: KnowledgeBase
    removed: set = field(default_factory=set)
    errors: list = field(default_factory=list)
    homonyms: list = field(default_factory=list)
    suskb: list = field(default_factory=list)

    def verdict_counts(self, classifications):
        counts = {v.value: 0 for v in Verdict}
        for c in classifications:
            counts[c.verdict.kind.value] += 1
        return counts


def classify(instance, w_a, w_b, t: RepairThresholds = RepairThresholds()) -> RelationVerdict:
    """
    classify - verdict of one instance found in both concept sets with weights w_a and w_b

    Error: max > B and min < L (and max - min >= min_differential), the smaller side is wrong.
    Homonym: min > B. Suspicious: max < L. Anything else is Indeterminate.
    """
    if w_a < 1 or w_b < 1:
        raise ContractViolation(f"weights of {instance!r} must be >= 1, got {w_a}, {w_b}")
    high, small = max(w_a, w_b), min(w_a, w_b)

    if high > t.big and small < t.low:
        if high - small >= t.min_differential:
            return RelationVerdict(Verdict.ERROR, "a" if w_a < w_b else "b")
        return RelationVerdict(Verdict.INDETERMINATE)
    if small > t.big:
        return RelationVerdict(Verdict.HOMONYM)
    if high < t.low:
        return RelationVerdict(Verdict.SUSPICIOUS)
    return RelationVerdict(Verdict.INDETERMINATE)


def _classify_shared(pair, shared, t):
    return [ClassifiedRelation(instance, pair, wa, wb, classify(instance, wa, wb, t)) for instance, wa, wb in shared]


def classify_pair(pair: ConflictPair, kb: KnowledgeBase, t: RepairThresholds = RepairThresholds()) -> list:
    """
    classify_pair - one ClassifiedRelation per instance of intersection(a, b)
    """
    sets = kb.concept_index
    for concept in pair.key:
        if concept not in sets:
            raise ContractViolation(f"unknown concept {concept!r}")
    return _classify_shared(pair, intersection(sets[pair.concept_a], sets[pair.concept_b]), t)


def _classify_chunk(chunk, t):
    out = []
    for pair, shared in chunk:
        out.extend(_classify_shared(pair, shared, t))
    return out


def classify_pairs(pairs, kb: KnowledgeBase, t: RepairThresholds = RepairThresholds(), workers=1) -> list:
    """
    classify_pairs - classify_pair over every pair, in canonical (concept_a, concept_b, instance) order
    """
    sets = kb.concept_index
    jobs = []
    for pair in sorted(pairs, key=lambda p: p.key):
        for concept in pair.key:
            if concept not in sets:
                raise ContractViolation(f"unknown concept {concept!r}")
        jobs.append((pair, intersection(sets[pair.concept_a], sets[pair.concept_b])))

    chunks = parallel_map(partial(_classify_chunk, t=t), chunked(jobs, 256), workers, chunksize=1)
    result = [c for chunk in chunks for c in chunk]
    return sorted(result, key=lambda c: c.sort_key)


def apply_repairs(kb: KnowledgeBase, classifications) -> RepairOutput:
    """
    apply_repairs - delete Error-side triples, annotate homonyms, collect the SUSKB review rows
    """
    classifications = sorted(classifications, key=lambda c: c.sort_key)

    # DOC: every referenced triple must be in the KB with the classified weight
    for c in classifications:
        for which in ("a", "b"):
            concept, weight, _, _ = c.side(which)
            if kb.weight(concept, c.instance) != weight:
                raise ContractViolation(f"classification references missing triple ({concept}, {c.instance}, {weight})")

    removed, errors = set(), []
    for c in classifications:
        if c.verdict.kind is Verdict.ERROR:
            concept, weight, other, other_weight = c.side(c.verdict.side)
            removed.add((concept, c.instance))
            errors.append((concept, c.instance, weight, other, other_weight))

    homonyms, suskb = set(), set()
    for c in classifications:
        if c.verdict.kind is Verdict.HOMONYM:
            for which in ("a", "b"):
                concept, weight, _, _ = c.side(which)
                if (concept, c.instance) not in removed:
                    homonyms.add((f"{c.instance}#{concept}", weight))
        elif c.verdict.kind in (Verdict.SUSPICIOUS, Verdict.INDETERMINATE):
            for which in ("a", "b"):
                concept, weight, other, other_weight = c.side(which)
                if (concept, c.instance) not in removed:
                    suskb.add((concept, c.instance, weight, other, other_weight, c.verdict.kind.value))

    repaired = kb.without(removed)
    Logger.debug(f"apply_repairs: removed {len(removed)}, homonym senses {len(homonyms)}, suskb {len(suskb)}")
    return RepairOutput(
        repaired=repaired,
        removed=removed,
        errors=sorted(set(errors)),
        homonyms=sorted(homonyms),
        suskb=sorted(suskb),
    )


def band_label(lo, hi):
    return f">{lo}" if hi is None else f"{lo}-{hi}"


def differential_report(classifications, bands=DIFFERENTIAL_BANDS) -> pd.DataFrame:
    """
    differential_report - counts of intersection instances per (weight differential band, minimum weight)

    Bands are half-open [lo, hi); the last band may be unbounded (hi None).
    """
    bands = list(bands)
    for (lo, hi), (next_lo, _) in zip(bands, bands[1:]):
        if hi is None or hi > next_lo or lo >= hi:
            raise ContractViolation("differential bands must be ordered and non-overlapping")

    labels = [band_label(lo, hi) for lo, hi in bands]
    report = pd.DataFrame(0, index=pd.Index(labels, name="differential"), columns=MIN_WEIGHT_COLUMNS, dtype="int64")
    for c in classifications:
        small = min(c.weight_a, c.weight_b)
        diff = max(c.weight_a, c.weight_b) - small
        column = str(small) if small <= 10 else ">10"
        for label, (lo, hi) in zip(labels, bands):
            if diff >= lo and (hi is None or diff < hi):
                report.loc[label, column] += 1
                break
    return report
