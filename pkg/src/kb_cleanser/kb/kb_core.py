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
# Name:        kb_core.py
# Purpose:     IsA triples, weighted concept sets and exact set operations
#
# Author:      Luzzi Valerio
#
# Created:     14/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import pandas as pd

from ..cli.module_log import Logger
from ..utils.status_exception import ContractViolation, ParseError


TRIPLE_COLUMNS = ["concept", "instance", "weight"]


@dataclass(frozen=True, order=True)
class Triple:
    """
    Triple - one IsA assertion (instance IsA concept) with its occurrence frequency
    """
    concept: str
    instance: str
    weight: int

    def __post_init__(self):
        if not self.concept or not self.instance:
            raise ContractViolation("concept and instance must be non-empty")
        if int(self.weight) < 1:
            raise ContractViolation(f"weight must be >= 1, got {self.weight}")


@dataclass(frozen=True)
class ConceptSet:
    """
    ConceptSet - a concept with its weighted instance map
    """
    concept: str
    members: Mapping[str, int]

    @property
    def size(self):
        return len(self.members)

    @property
    def total_weight(self):
        return sum(self.members.values())

    def instances(self):
        """Instance names in lexicographic order."""
        return sorted(self.members)


@dataclass(frozen=True)
class TsvFormat:
    """
    TsvFormat - the three column dump descriptor: concept<TAB>instance<TAB>weight
    """
    delimiter: str = "\t"
    comment: str = "#"
    columns: int = 3


@dataclass
class ParseReport:
    """
    ParseReport - what ingestion skipped and why
    """
    lines_read: int = 0
    accepted: int = 0
    duplicates_merged: int = 0
    rejected_weights: int = 0
    malformed: list = field(default_factory=list)   # (line_number, message)

    @property
    def rejected(self):
        return self.rejected_weights + len(self.malformed)


class KnowledgeBase:
    """
    KnowledgeBase - IsA triples keyed by (concept, instance), read-only after construction
    """

    def __init__(self, weights=None, parse_report=None):
        self._weights = dict(weights or {})
        self.parse_report = parse_report or ParseReport()
        self._concept_index = None

    @classmethod
    def from_triples(cls, triples: Iterable[Triple]):
        """
        from_triples - build a KB, duplicates merge by summing weights
        """
        weights = {}
        for triple in triples:
            key = (triple.concept, triple.instance)
            weights[key] = weights.get(key, 0) + int(triple.weight)
        return cls(weights)

    def __len__(self):
        return len(self._weights)

    def __contains__(self, key):
        return key in self._weights

    def weight(self, concept, instance):
        """Weight of (concept, instance) or None."""
        return self._weights.get((concept, instance))

    @property
    def triples(self):
        """All triples sorted by (concept, instance)."""
        return [Triple(c, i, w) for (c, i), w in sorted(self._weights.items())]

    @property
    def concept_index(self):
        if self._concept_index is None:
            self._concept_index = build_concept_sets(self)
        return self._concept_index

    def items(self):
        return self._weights.items()

    def without(self, removed: Iterable[tuple]):
        """
        without - a new KB with the given (concept, instance) keys dropped
        """
        removed = set(removed)
        return KnowledgeBase(
            {key: w for key, w in self._weights.items() if key not in removed},
            parse_report=self.parse_report,
        )

    def to_dataframe(self):
        """Triples as a DataFrame with columns concept, instance, weight."""
        return pd.DataFrame(
            [(t.concept, t.instance, t.weight) for t in self.triples],
            columns=TRIPLE_COLUMNS,
        )

    def __repr__(self):
        return f"<KnowledgeBase> {len(self)} triples"


def normalize_name(text):
    """
    normalize_name - trim and lower-case a concept or instance name
    """
    return text.strip().lower()


def parse_triples(lines: Iterable[str], fmt: TsvFormat = TsvFormat(), strict=False) -> KnowledgeBase:
    """
    parse_triples - ingest a concept<TAB>instance<TAB>weight stream into a KnowledgeBase

    Malformed lines are recorded with their line number (or raised as ParseError when strict),
    zero/negative weights are rejected and counted; duplicate pairs merge by summing weights.
    """
    report = ParseReport()
    weights = {}

    for line_number, line in enumerate(lines, start=1):
        report.lines_read += 1
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith(fmt.comment):
            continue

        fields = line.split(fmt.delimiter)
        problem = None
        weight = None
        if len(fields) != fmt.columns:
            problem = f"expected {fmt.columns} fields, found {len(fields)}"
        else:
            concept, instance = normalize_name(fields[0]), normalize_name(fields[1])
            try:
                weight = int(fields[2].strip())
            except ValueError:
                problem = f"weight {fields[2]!r} is not an integer"
            if problem is None and (not concept or not instance):
                problem = "empty concept or instance"

        if problem is not None:
            if strict:
                raise ParseError(line_number, problem)
            report.malformed.append((line_number, problem))
            Logger.warning("line %d skipped: %s", line_number, problem)
            continue

        if weight < 1:
            report.rejected_weights += 1
            Logger.warning("line %d rejected: non-positive weight %d", line_number, weight)
            continue

        key = (concept, instance)
        if key in weights:
            report.duplicates_merged += 1
        weights[key] = weights.get(key, 0) + weight
        report.accepted += 1

    Logger.debug(f"parsed {len(weights)} triples, {report.rejected} lines rejected")
    return KnowledgeBase(weights, parse_report=report)


def read_kb(filename, strict=False) -> KnowledgeBase:
    """
    read_kb - parse a UTF-8 TSV dump from disk
    """
    with open(filename, mode="r", encoding="utf-8") as stream:
        return parse_triples(stream, strict=strict)


def build_concept_sets(kb: KnowledgeBase) -> dict:
    """
    build_concept_sets - group the triples of a KB into one ConceptSet per concept
    """
    grouped = {}
    for (concept, instance), weight in kb.items():
        grouped.setdefault(concept, {})[instance] = weight
    return {
        concept: ConceptSet(concept, dict(sorted(members.items())))
        for concept, members in sorted(grouped.items())
    }


def flatten_concept_sets(sets: Mapping[str, ConceptSet]) -> list:
    """
    flatten_concept_sets - back to the sorted triple list
    """
    return sorted(
        Triple(s.concept, instance, weight)
        for s in sets.values()
        for instance, weight in s.members.items()
    )


def intersection(a: ConceptSet, b: ConceptSet) -> list:
    """
    intersection - [(instance, weight_in_a, weight_in_b)] for instances in both sets, sorted by instance
    """
    if a.concept == b.concept:
        raise ContractViolation(f"intersection of concept {a.concept!r} with itself")
    small, large = (a, b) if a.size <= b.size else (b, a)
    shared = sorted(instance for instance in small.members if instance in large.members)
    return [(instance, a.members[instance], b.members[instance]) for instance in shared]


@dataclass(frozen=True)
class WeightRange:
    """
    WeightRange - inclusive weight interval [lo, hi], hi None meaning unbounded
    """
    lo: int
    hi: int | None = None

    @property
    def label(self):
        if self.hi is None:
            return f">{self.lo - 1}"
        if self.lo == self.hi:
            return str(self.lo)
        return f"{self.lo}-{self.hi}"


DEFAULT_HISTOGRAM_BUCKETS = (WeightRange(1, 1), WeightRange(2, None))


def parse_weight_ranges(text) -> list:
    """
    parse_weight_ranges - "1,2-10,>10" -> [WeightRange(1,1), WeightRange(2,10), WeightRange(11,None)]
    """
    ranges = []
    for token in (t.strip() for t in str(text).split(",")):
        if not token:
            continue
        try:
            if token.startswith(">"):
                ranges.append(WeightRange(int(token[1:]) + 1, None))
            elif "-" in token:
                lo, hi = token.split("-", 1)
                ranges.append(WeightRange(int(lo), int(hi)))
            else:
                ranges.append(WeightRange(int(token), int(token)))
        except ValueError:
            raise ContractViolation(f"cannot parse weight range {token!r}")
    return ranges


def _check_partition(buckets):
    if not buckets:
        raise ContractViolation("at least one weight bucket is required")
    expected_lo = 1
    for i, bucket in enumerate(buckets):
        if bucket.lo != expected_lo:
            raise ContractViolation(f"buckets must partition [1, inf): gap or overlap at {bucket.label}")
        if bucket.hi is None:
            if i != len(buckets) - 1:
                raise ContractViolation("only the last bucket may be unbounded")
            return
        if bucket.hi < bucket.lo:
            raise ContractViolation(f"empty bucket {bucket.lo}-{bucket.hi}")
        expected_lo = bucket.hi + 1
    raise ContractViolation("buckets must cover [1, inf): the last bucket must be unbounded")


def frequency_histogram(kb: KnowledgeBase, buckets=DEFAULT_HISTOGRAM_BUCKETS) -> dict:
    """
    frequency_histogram - percentage of triples per weight bucket (counts are over triples)

    An empty KB yields 0.0 for every bucket.
    """
    buckets = list(buckets)
    _check_partition(buckets)

    weights = kb.to_dataframe()["weight"].astype("int64")
    edges = [b.lo - 0.5 for b in buckets] + [float("inf")]
    labels = [b.label for b in buckets]
    counts = pd.cut(weights, bins=edges, labels=labels, right=False).value_counts(sort=False)

    total = int(counts.sum())
    return {
        label: (100.0 * int(counts[label]) / total if total else 0.0)
        for label in labels
    }
