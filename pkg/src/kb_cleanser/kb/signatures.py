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
# Name:        signatures.py
# Purpose:     weighted SimHash fingerprints, MinHash signatures and their distances
#
# Author:      Luzzi Valerio
#
# Created:     14/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np
import xxhash

from ..utils.module_pool import parallel_map
from ..utils.status_exception import ContractViolation
from .kb_core import ConceptSet


HASH_ALGORITHM = "xxh64+splitmix64/v1"
DEFAULT_SEED = 20141025
SIMHASH_WIDTHS = (64, 128, 256)
WEIGHT_TRANSFORMS = ("raw", "log")

# seed streams, one per use
_PURPOSE_SIMHASH = 1
_PURPOSE_MINHASH = 2

_U64_MAX = np.iinfo(np.uint64).max
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_BIT_SHIFTS = np.arange(64, dtype=np.uint64)


def _mix64(x):
    """splitmix64 finalizer on a uint64 array (wrapping arithmetic)."""
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class HashFamily:
    """
    HashFamily - seeded, versioned hash functions shared by every signature of a run
    """
    seed: int = DEFAULT_SEED
    algorithm: str = HASH_ALGORITHM

    def __post_init__(self):
        if not 0 <= int(self.seed) <= int(_U64_MAX):
            raise ContractViolation(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.algorithm != HASH_ALGORITHM:
            raise ContractViolation(f"unsupported hash algorithm {self.algorithm!r}")

    def instance_hashes(self, instances):
        """xxh64 of each UTF-8 instance name under the family seed."""
        return np.fromiter(
            (xxhash.xxh64_intdigest(name.encode("utf-8"), seed=self.seed) for name in instances),
            dtype=np.uint64, count=len(instances),
        )

    def derived_seeds(self, count, purpose):
        """count uint64 keys for one purpose; PCG64 streams are platform independent."""
        rng = np.random.default_rng([int(self.seed), int(purpose)])
        return rng.integers(0, _U64_MAX, size=(2, count), dtype=np.uint64, endpoint=True)

    def row_hashes(self, instances, count, purpose):
        """
        row_hashes - (len(instances), count) matrix of independent 64-bit hashes
        """
        base = self.instance_hashes(instances)
        keys = self.derived_seeds(count, purpose)
        return _mix64(_mix64(base[:, None] ^ keys[0][None, :]) ^ keys[1][None, :])


@dataclass(frozen=True)
class BitSignature:
    """
    BitSignature - SimHash fingerprint; bit i of `bits` is bit (i % 64) of row hash word i // 64
    """
    concept: str
    bits: int
    width: int
    seed: int

    def hex(self):
        return f"{self.bits:0{self.width // 4}x}"


@dataclass(frozen=True)
class MinSignature:
    """
    MinSignature - per-row minimum hash values of a concept set
    """
    concept: str
    values: tuple
    seed: int

    @property
    def num_perms(self):
        return len(self.values)

    def as_array(self):
        return np.asarray(self.values, dtype=np.uint64)

    def hex(self):
        return "".join(f"{v:016x}" for v in self.values)


def _check_width(width):
    if width not in SIMHASH_WIDTHS:
        raise ContractViolation(f"simhash width must be one of {SIMHASH_WIDTHS}, got {width}")


def _pack_bits(bitvector):
    packed = np.packbits(bitvector.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _bit_matrix(instances, family, width):
    words = family.row_hashes(instances, width // 64, _PURPOSE_SIMHASH)
    bits = (words[:, :, None] >> _BIT_SHIFTS) & np.uint64(1)
    return bits.reshape(len(instances), width)


def transform_weights(weights, weight_transform="raw"):
    """
    transform_weights - raw frequencies as int64, or 1 + ln(w) as float64
    """
    if weight_transform == "raw":
        return np.asarray(weights, dtype=np.int64)
    if weight_transform == "log":
        return 1.0 + np.log(np.asarray(weights, dtype=np.float64))
    raise ContractViolation(f"weight transform must be one of {WEIGHT_TRANSFORMS}, got {weight_transform!r}")


def fingerprint(instance, family: HashFamily, width=64):
    """
    fingerprint - the bit pattern a single instance votes for
    """
    _check_width(width)
    return _pack_bits(_bit_matrix([instance], family, width)[0])


def simhash(cset: ConceptSet, family: HashFamily, width=64, weight_transform="raw") -> BitSignature:
    """
    simhash - weighted Charikar fingerprint of a concept set

    Every instance adds +w to the positions where its hash bit is 1 and -w where it is 0;
    a position is 1 iff its sum is strictly positive (a zero sum gives 0).
    """
    _check_width(width)
    if cset.size == 0:
        raise ContractViolation(f"simhash of empty concept set {cset.concept!r}")

    instances = cset.instances()
    weights = transform_weights([cset.members[i] for i in instances], weight_transform)
    signs = _bit_matrix(instances, family, width).astype(np.int64) * 2 - 1
    votes = weights @ signs
    return BitSignature(cset.concept, _pack_bits(votes > 0), width, family.seed)


def minhash(cset: ConceptSet, family: HashFamily, num_perms=128) -> MinSignature:
    """
    minhash - per-row minima of num_perms seeded hashes over the instance names (weights ignored)
    """
    if num_perms < 1:
        raise ContractViolation(f"num_perms must be positive, got {num_perms}")
    if cset.size == 0:
        raise ContractViolation(f"minhash of empty concept set {cset.concept!r}")

    rows = family.row_hashes(cset.instances(), num_perms, _PURPOSE_MINHASH)
    return MinSignature(cset.concept, tuple(rows.min(axis=0).tolist()), family.seed)


def hamming(x: BitSignature, y: BitSignature) -> int:
    """
    hamming - popcount of x XOR y
    """
    if x.width != y.width:
        raise ContractViolation(f"width mismatch: {x.width} vs {y.width}")
    return bin(x.bits ^ y.bits).count("1")


def estimate_jaccard(x: MinSignature, y: MinSignature) -> float:
    """
    estimate_jaccard - fraction of rows on which the two signatures agree
    """
    if x.num_perms != y.num_perms or x.seed != y.seed:
        raise ContractViolation(
            f"signature parameters differ: num_perms {x.num_perms}/{y.num_perms}, seed {x.seed}/{y.seed}"
        )
    return float(np.count_nonzero(x.as_array() == y.as_array())) / x.num_perms


def compute_simhashes(sets, family: HashFamily, width=64, weight_transform="raw", workers=1):
    """
    compute_simhashes - {concept: BitSignature} for an iterable of ConceptSets
    """
    sets = sorted(sets, key=lambda s: s.concept)
    func = partial(simhash, family=family, width=width, weight_transform=weight_transform)
    return {s.concept: sig for s, sig in zip(sets, parallel_map(func, sets, workers))}


def compute_minhashes(sets, family: HashFamily, num_perms=128, workers=1):
    """
    compute_minhashes - {concept: MinSignature} for an iterable of ConceptSets
    """
    sets = sorted(sets, key=lambda s: s.concept)
    func = partial(minhash, family=family, num_perms=num_perms)
    return {s.concept: sig for s, sig in zip(sets, parallel_map(func, sets, workers))}
