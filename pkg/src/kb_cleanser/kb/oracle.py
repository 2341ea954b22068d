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
# Name:        oracle.py
# Purpose:     brute-force references and planted-error evaluation
#
# Author:      Luzzi Valerio
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..utils import filesystem
from ..utils.status_exception import ContractViolation, RefusalError
from .conflict_join import ConflictPair, JoinParams, HAMMING, JACCARD, overlap_ratio
from .signatures import hamming

NAIVE_MAX_SETS = 5000
EVAL_COLUMNS = ["true_positives", "false_positives", "false_negatives", "precision", "recall"]


def exact_jaccard(a, b):
    """
    exact_jaccard - |A n B| / |A u B| over instance keys, weights ignored
    """
    if a.size == 0 or b.size == 0:
        raise ContractViolation("exact_jaccard of an empty concept set")
    keys_a, keys_b = set(a.members), set(b.members)
    return len(keys_a & keys_b) / len(keys_a | keys_b)


def naive_conflict_join(sets, metric, params: JoinParams = JoinParams(), signatures=None):
    """
    naive_conflict_join - exhaustive pairwise join with the thresholds of the fast path

    metric "hamming" compares the given BitSignatures, metric "jaccard" the exact set similarity.
    Concepts below min_set_size are skipped; with require_overlap only pairs sharing an
    instance are examined.
    """
    if metric not in (HAMMING, JACCARD):
        raise ContractViolation(f"metric must be {HAMMING!r} or {JACCARD!r}, got {metric!r}")
    if metric == HAMMING and signatures is None:
        raise ContractViolation("the hamming metric needs signatures")

    concepts = sorted(signatures if metric == HAMMING else sets)
    concepts = [c for c in concepts if sets[c].size >= params.min_set_size]
    if len(concepts) > NAIVE_MAX_SETS:
        raise RefusalError(f"naive join refused: {len(concepts)} sets exceed the limit of {NAIVE_MAX_SETS}")

    result = set()
    for a, b in combinations(concepts, 2):
        if params.require_overlap and set(sets[a].members).isdisjoint(sets[b].members):
            continue
        if metric == HAMMING:
            distance = hamming(signatures[a], signatures[b])
            if distance >= params.resolved_hamming_min(signatures[a].width):
                result.add(ConflictPair(a, b, frozenset({HAMMING}), hamming_distance=distance))
        else:
            similarity = exact_jaccard(sets[a], sets[b])
            if similarity <= params.jaccard_max and overlap_ratio(sets[a], sets[b]) < params.subset_guard:
                result.add(ConflictPair(a, b, frozenset({JACCARD}), jaccard_estimate=similarity))
    return result


@dataclass(frozen=True)
class EvalReport:
    """
    EvalReport - precision and recall over triple identity, None when undefined
    """
    true_positives: int
    false_positives: int
    false_negatives: int

    @property
    def precision(self):
        detected = self.true_positives + self.false_positives
        return self.true_positives / detected if detected else None

    @property
    def recall(self):
        planted = self.true_positives + self.false_negatives
        return self.true_positives / planted if planted else None

    def to_row(self):
        def fmt(x):
            return "" if x is None else f"{x:.4f}"
        return (self.true_positives, self.false_positives, self.false_negatives, fmt(self.precision), fmt(self.recall))

    def to_tsv_line(self):
        return "\t".join(str(v) for v in self.to_row())

    def summary(self):
        def fmt(x):
            return "n/a" if x is None else f"{x:.4f}"
        return "\n".join([
            f"true positives:  {self.true_positives}",
            f"false positives: {self.false_positives}",
            f"false negatives: {self.false_negatives}",
            f"precision:       {fmt(self.precision)}",
            f"recall:          {fmt(self.recall)}",
        ])


def _keys(triples):
    return {(t[0], t[1]) for t in triples}


def evaluate_planted(ground_truth, detected) -> EvalReport:
    """
    evaluate_planted - compare detected wrong triples with the planted ones on (concept, instance)
    """
    truth, found = _keys(ground_truth), _keys(detected)
    return EvalReport(
        true_positives=len(truth & found),
        false_positives=len(found - truth),
        false_negatives=len(truth - found),
    )


def read_triple_keys(filename):
    """
    read_triple_keys - {(concept, instance)} from the first two columns of a TSV report
    """
    return {(fields[0], fields[1]) for _, fields in filesystem.read_tsv_lines(filename) if len(fields) >= 2}


def frequency_baseline(kb, max_weight=1):
    """
    frequency_baseline - flag every triple whose weight is at most max_weight
    """
    return {key for key, weight in kb.items() if weight <= max_weight}
