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
# Name:        conflict_join.py
# Purpose:     conflicting concept pairs by Hamming join, MinHash LSH join and their union
#
# Author:      Luzzi Valerio
#
# Created:     15/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations

import numpy as np
import xxhash

from ..cli.module_log import Logger
from ..utils.module_pool import parallel_map, chunked
from ..utils.status_exception import ContractViolation
from .signatures import estimate_jaccard

HAMMING = "hamming"
JACCARD = "jaccard"
METHODS = (HAMMING, JACCARD)

CONFLICT_COLUMNS = ["concept_a", "concept_b", "found_by", "hamming", "jaccard_est"]


@dataclass(frozen=True)
class ConflictPair:
    """
    ConflictPair - an unordered pair of concepts judged conflicting, concept_a < concept_b
    """
    concept_a: str
    concept_b: str
    found_by: frozenset = field(default_factory=frozenset)
    hamming_distance: int | None = None
    jaccard_estimate: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "found_by", frozenset(self.found_by))
        if not self.concept_a < self.concept_b:
            raise ContractViolation(f"pair must be ordered and distinct: {self.concept_a!r}, {self.concept_b!r}")
        if not self.found_by or not self.found_by <= set(METHODS):
            raise ContractViolation(f"found_by must be a non-empty subset of {METHODS}")
        if (self.hamming_distance is not None) != (HAMMING in self.found_by):
            raise ContractViolation("hamming_distance is present iff the pair was found by hamming")
        if (self.jaccard_estimate is not None) != (JACCARD in self.found_by):
            raise ContractViolation("jaccard_estimate is present iff the pair was found by jaccard")

    @classmethod
    def of(cls, x, y, **kwargs):
        """Build a pair from two concepts in any order."""
        a, b = (x, y) if x < y else (y, x)
        return cls(a, b, **kwargs)

    @property
    def key(self):
        return (self.concept_a, self.concept_b)

    def to_row(self):
        return (
            self.concept_a,
            self.concept_b,
            ",".join(sorted(self.found_by)),
            "" if self.hamming_distance is None else str(self.hamming_distance),
            "" if self.jaccard_estimate is None else f"{self.jaccard_estimate:.6f}",
        )


@dataclass(frozen=True)
class JoinParams:
    """
    JoinParams - thresholds and LSH layout of the conflict joins
    """
    hamming_min: int | None = None     # None -> ceil(0.45 * width)
    num_bands: int = 32
    bucket_count: int = 128
    jaccard_max: float = 0.01
    min_set_size: int = 2
    subset_guard: float = 0.8
    hamming_blocks: int = 8
    require_overlap: bool = True

    def resolved_hamming_min(self, width):
        if self.hamming_min is None:
            return math.ceil(0.45 * width)
        return int(self.hamming_min)

    def validate(self, num_perms=None, width=None):
        """
        validate - raise ContractViolation on any inconsistent value
        """
        if self.num_bands < 1:
            raise ContractViolation("num_bands must be positive")
        if num_perms is not None and num_perms % self.num_bands != 0:
            raise ContractViolation(f"num_bands {self.num_bands} must divide num_perms {num_perms}")
        if self.bucket_count < 2:
            raise ContractViolation("bucket_count must be >= 2")
        if not 0.0 <= self.jaccard_max <= 1.0:
            raise ContractViolation("jaccard_max must be in [0, 1]")
        if not 0.0 < self.subset_guard <= 1.0:
            raise ContractViolation("subset_guard must be in (0, 1]")
        if self.min_set_size < 1:
            raise ContractViolation("min_set_size must be >= 1")
        if self.hamming_blocks < 1:
            raise ContractViolation("hamming_blocks must be positive")
        if width is not None:
            hamming_min = self.resolved_hamming_min(width)
            if not 0 <= hamming_min <= width:
                raise ContractViolation(f"hamming_min must be in [0, {width}], got {hamming_min}")
        return self


def sort_pairs(pairs):
    """Pairs in canonical (concept_a, concept_b) order."""
    return sorted(pairs, key=lambda p: p.key)


# -----------------------------------------------------------------------------
# Blocking
# -----------------------------------------------------------------------------
def blocking_scope(sets, concepts=None, min_set_size=1):
    """
    blocking_scope - ordered concept pairs sharing at least one instance (posting lists)
    """
    eligible = set(sets if concepts is None else concepts)
    postings = {}
    for concept in sorted(eligible):
        cset = sets[concept]
        if cset.size < min_set_size:
            continue
        for instance in cset.members:
            postings.setdefault(instance, []).append(concept)

    scope = set()
    for posting in postings.values():
        if len(posting) > 1:
            scope.update(combinations(sorted(posting), 2))
    return scope


# -----------------------------------------------------------------------------
# Hamming join
# -----------------------------------------------------------------------------
def _block_layout(width, blocks, seed):
    """Seeded permutation of the bit positions cut into `blocks` near-equal groups."""
    blocks = max(1, min(blocks, width))
    order = np.random.default_rng([int(seed), 3]).permutation(width).tolist()
    bounds = [round(i * width / blocks) for i in range(blocks + 1)]
    return [order[bounds[i]:bounds[i + 1]] for i in range(blocks)]


def _block_key(bits, positions):
    key = 0
    for j, position in enumerate(positions):
        key |= ((bits >> position) & 1) << j
    return key


def _verify_chunk(chunk, bits, hamming_min):
    out = []
    for i, j in chunk:
        distance = bin(bits[i] ^ bits[j]).count("1")
        if distance >= hamming_min:
            out.append((i, j, distance))
    return out


def _eligible(signatures, sets, min_set_size):
    """Signatures whose concept set holds at least min_set_size instances."""
    if sets is None:
        if min_set_size > 1:
            raise ContractViolation(f"min_set_size {min_set_size} needs the concept sets")
        return signatures
    unknown = [s.concept for s in signatures if s.concept not in sets]
    if unknown:
        raise ContractViolation(f"signatures without concept sets: {unknown[:5]}")
    return [s for s in signatures if sets[s.concept].size >= min_set_size]


def _multi_index_candidates(bits, width, hamming_min, blocks, seed):
    """
    _multi_index_candidates - index pairs that may be at distance >= hamming_min

    d(x, y) >= t iff d(x, ~y) <= width - t, so this is a radius search of each complemented
    signature in a multi-index over permuted bit blocks (pigeonhole: some block is within
    radius // blocks).
    """
    layout = _block_layout(width, blocks, seed)
    block_radius = (width - hamming_min) // len(layout)
    mask = (1 << width) - 1

    index = []
    for positions in layout:
        table = {}
        for i, b in enumerate(bits):
            table.setdefault(_block_key(b, positions), []).append(i)
        index.append(table)

    candidates = set()
    for i, b in enumerate(bits):
        complement = ~b & mask
        for positions, table in zip(layout, index):
            key = _block_key(complement, positions)
            for other, members in table.items():
                if bin(other ^ key).count("1") <= block_radius:
                    candidates.update((min(i, j), max(i, j)) for j in members if j != i)
    return candidates


def hamming_join(signatures, params: JoinParams, scope=None, workers=1, sets=None):
    """
    hamming_join - S_H, every pair with Hamming distance >= hamming_min

    Signatures of sets smaller than params.min_set_size are left out, which needs `sets`.
    With a blocking scope, either given or built from `sets` when params.require_overlap is
    on, the scope pairs are verified directly. Without one, a multi-index over permuted bit
    blocks yields the candidates. Either way the result equals the all-pairs scan.
    """
    signatures = sorted(signatures, key=lambda s: s.concept)
    if not signatures:
        return set()
    widths = {s.width for s in signatures}
    seeds = {s.seed for s in signatures}
    if len(widths) != 1 or len(seeds) != 1:
        raise ContractViolation(f"mixed signature parameters: widths {sorted(widths)}, seeds {sorted(seeds)}")
    width, seed = widths.pop(), seeds.pop()
    params.validate(width=width)
    hamming_min = params.resolved_hamming_min(width)

    signatures = _eligible(signatures, sets, params.min_set_size)
    concepts = [s.concept for s in signatures]
    bits = [s.bits for s in signatures]
    if scope is None and params.require_overlap:
        if sets is None:
            raise ContractViolation("require_overlap needs the concept sets or a scope")
        scope = blocking_scope(sets, concepts, params.min_set_size)

    # DOC: candidates from the scope, or from the multi-index
    if scope is None:
        candidates = _multi_index_candidates(bits, width, hamming_min, params.hamming_blocks, seed)
    else:
        position = {c: i for i, c in enumerate(concepts)}
        candidates = {
            tuple(sorted((position[a], position[b]))) for a, b in scope if a in position and b in position
        }

    # DOC: exact verification
    chunks = chunked(sorted(candidates), 4096)
    verified = parallel_map(partial(_verify_chunk, bits=bits, hamming_min=hamming_min), chunks, workers, chunksize=1)

    result = {
        ConflictPair(concepts[i], concepts[j], frozenset({HAMMING}), hamming_distance=distance)
        for chunk in verified for i, j, distance in chunk
    }
    Logger.debug(f"hamming_join: {len(candidates)} candidates, {len(result)} conflicts")
    return result


# -----------------------------------------------------------------------------
# MinHash LSH join
# -----------------------------------------------------------------------------
def band_hashes(signature, num_bands):
    """
    band_hashes - one 64-bit xxh64 per band of rows, keyed by the signature seed
    """
    values = signature.as_array()
    rows = len(values) // num_bands
    return [
        xxhash.xxh64_intdigest(values[b * rows:(b + 1) * rows].tobytes(), seed=signature.seed)
        for b in range(num_bands)
    ]


def _share_a_band(x, y):
    return any(p == q for p, q in zip(x, y))


def lsh_bucketize(signatures, params: JoinParams, scope=None):
    """
    lsh_bucketize - conflict candidates from MinHash banding, sorted (concept_a, concept_b) list

    Pairs agreeing on a whole band (same band hash) are the LSH-similar ones and never
    candidates. With a scope, every scope pair of two signed concepts that shares no band is a
    candidate, and bucket_count plays no part. Without one, a pair is a candidate iff it also
    falls in the same bucket (band hash mod bucket_count) in at least one band: smaller bucket
    counts collide more, so for bucket counts that divide each other the candidate sets are
    nested.
    """
    signatures = sorted(signatures, key=lambda s: s.concept)
    if not signatures:
        return []
    perms = {s.num_perms for s in signatures}
    seeds = {s.seed for s in signatures}
    if len(perms) != 1 or len(seeds) != 1:
        raise ContractViolation(f"mixed signature parameters: num_perms {sorted(perms)}, seeds {sorted(seeds)}")
    params.validate(num_perms=perms.pop())

    if scope is not None:
        hashes = {s.concept: band_hashes(s, params.num_bands) for s in signatures}
        in_scope = {tuple(sorted((a, b))) for a, b in scope if a in hashes and b in hashes}
        candidates = sorted((a, b) for a, b in in_scope if not _share_a_band(hashes[a], hashes[b]))
        Logger.debug(f"lsh_bucketize: {len(in_scope)} scope pairs, {len(candidates)} candidates")
        return candidates

    concepts = [s.concept for s in signatures]
    hashes = [band_hashes(s, params.num_bands) for s in signatures]

    colliding, similar = set(), set()
    for band in range(params.num_bands):
        buckets, exact = {}, {}
        for i, row in enumerate(hashes):
            buckets.setdefault(row[band] % params.bucket_count, []).append(i)
            exact.setdefault(row[band], []).append(i)
        for members in buckets.values():
            colliding.update(combinations(members, 2))
        for members in exact.values():
            similar.update(combinations(members, 2))

    candidates = sorted((concepts[i], concepts[j]) for i, j in colliding - similar)
    Logger.debug(f"lsh_bucketize: {len(colliding)} colliding, {len(similar)} similar, {len(candidates)} candidates")
    return candidates


def overlap_ratio(a, b):
    """|A n B| / min(|A|, |B|) over instance keys."""
    small, large = (a, b) if a.size <= b.size else (b, a)
    shared = sum(1 for instance in small.members if instance in large.members)
    return shared / small.size


def jaccard_join(signatures, sets, params: JoinParams):
    """
    jaccard_join - S_J, LSH candidates with estimated Jaccard <= jaccard_max

    Only sets of at least params.min_set_size instances take part. Every overlapping pair is a
    candidate unless it shares a band; with params.require_overlap off, the bucket collisions
    of disjoint pairs are added on top. A pair where one set is nearly contained in the other
    (overlap ratio >= subset_guard) is suppressed.
    """
    signatures = _eligible(sorted(signatures, key=lambda s: s.concept), sets, params.min_set_size)
    by_concept = {s.concept: s for s in signatures}

    scope = blocking_scope(sets, by_concept, params.min_set_size)
    candidates = lsh_bucketize(signatures, params, scope=scope)
    if not params.require_overlap:
        candidates = sorted(set(candidates) | set(lsh_bucketize(signatures, params)))

    result = set()
    for a, b in candidates:
        estimate = estimate_jaccard(by_concept[a], by_concept[b])
        if estimate > params.jaccard_max:
            continue
        if overlap_ratio(sets[a], sets[b]) >= params.subset_guard:
            continue
        result.add(ConflictPair(a, b, frozenset({JACCARD}), jaccard_estimate=estimate))
    Logger.debug(f"jaccard_join: {len(candidates)} candidates, {len(result)} conflicts")
    return result


# -----------------------------------------------------------------------------
# Combination
# -----------------------------------------------------------------------------
def _first_or_min(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


def merge_pairs(p, q):
    """
    merge_pairs - one pair carrying the methods and distances of both
    """
    if p.key != q.key:
        raise ContractViolation(f"cannot merge {p.key} with {q.key}")
    return ConflictPair(
        p.concept_a, p.concept_b,
        p.found_by | q.found_by,
        hamming_distance=_first_or_min(p.hamming_distance, q.hamming_distance),
        jaccard_estimate=_first_or_min(p.jaccard_estimate, q.jaccard_estimate),
    )


def combine(s_h, s_j):
    """
    combine - S = S_H u S_J with provenance and distances merged per pair
    """
    merged = {}
    for pair in list(s_h) + list(s_j):
        merged[pair.key] = merge_pairs(merged[pair.key], pair) if pair.key in merged else pair
    return set(merged.values())
