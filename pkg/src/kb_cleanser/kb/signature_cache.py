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
# Name:        signature_cache.py
# Purpose:     on-disk cache of per-concept signatures
#
# Author:      Luzzi Valerio
#
# Created:     15/10/2026
# -----------------------------------------------------------------------------
import os

import xxhash

from ..cli.module_log import Logger
from ..utils import filesystem
from .signatures import BitSignature, MinSignature, HASH_ALGORITHM

CACHE_VERSION = "kbclean-signatures/1"
CACHE_COLUMNS = ["concept", "param", "seed", "digest", "signature"]


def members_digest(cset):
    """
    members_digest - xxh64 hex digest of the sorted (instance, weight) map
    """
    digestor = xxhash.xxh64(seed=0)
    for instance in cset.instances():
        digestor.update(f"{instance}\t{cset.members[instance]}\n".encode("utf-8"))
    return digestor.hexdigest()


class SignatureCache:
    """
    SignatureCache - one TSV file per signature kind and parameter set

    The first line is a versioned header; a header that does not match the requested
    kind/param/seed/weight transform invalidates the whole file. Each record also carries
    the member digest, so a concept whose set changed is recomputed.
    """

    def __init__(self, cache_dir, kind, param, seed, weight_transform="raw"):
        self.cache_dir = cache_dir
        self.kind = kind
        self.param = int(param)
        self.seed = int(seed)
        self.weight_transform = weight_transform if kind == "simhash" else "-"
        self.filename = os.path.join(cache_dir, f"{kind}_{self.param}.tsv")
        self.hits = 0
        self.misses = 0

    @property
    def header(self):
        return (
            f"{CACHE_VERSION} kind={self.kind} param={self.param} seed={self.seed} "
            f"algorithm={HASH_ALGORITHM} weights={self.weight_transform}"
        )

    def load(self):
        """
        load - {concept: (digest, signature)} or {} when missing or invalid
        """
        if not os.path.isfile(self.filename):
            return {}
        with open(self.filename, mode="r", encoding="utf-8") as stream:
            first = stream.readline().rstrip("\n")
        if first != f"# {self.header}":
            Logger.info("signature cache %s ignored: header mismatch", self.filename)
            return {}

        records = {}
        for line_number, fields in filesystem.read_tsv_lines(self.filename):
            if len(fields) != len(CACHE_COLUMNS):
                Logger.warning("signature cache %s: bad record at line %d", self.filename, line_number)
                return {}
            concept, param, seed, digest, signature = fields
            if int(param) != self.param or int(seed) != self.seed:
                return {}
            records[concept] = (digest, self._decode(concept, signature))
        return records

    def _decode(self, concept, text):
        if self.kind == "simhash":
            return BitSignature(concept, int(text, 16), self.param, self.seed)
        values = tuple(int(text[i:i + 16], 16) for i in range(0, len(text), 16))
        return MinSignature(concept, values, self.seed)

    def save(self, signatures, digests):
        """
        save - rewrite the cache file with the given signatures
        """
        filesystem.mkdirs(self.cache_dir)
        with open(self.filename, mode="w", encoding="utf-8", newline="\n") as stream:
            stream.write(f"# {self.header}\n")
            for concept in sorted(signatures):
                row = [concept, str(self.param), str(self.seed), digests[concept], signatures[concept].hex()]
                stream.write("\t".join(row) + "\n")
        return self.filename

    def resolve(self, sets, compute):
        """
        resolve - signatures for the given ConceptSets, computing (via compute(list_of_sets))
        only the ones missing or stale in the cache, then persisting the union
        """
        sets = sorted(sets, key=lambda s: s.concept)
        cached = self.load()
        digests = {s.concept: members_digest(s) for s in sets}

        result, missing = {}, []
        for cset in sets:
            entry = cached.get(cset.concept)
            if entry is not None and entry[0] == digests[cset.concept]:
                result[cset.concept] = entry[1]
            else:
                missing.append(cset)
        self.hits, self.misses = len(result), len(missing)

        if missing:
            result.update(compute(missing))
            self.save(result, digests)
        Logger.debug(f"signature cache {self.kind}: {self.hits} hits, {self.misses} misses")
        return result
