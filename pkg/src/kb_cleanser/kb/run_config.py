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
# Name:        run_config.py
# Purpose:     the validated configuration of a cleansing run
#
# Author:      Luzzi Valerio
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------
from __future__ import annotations

import json
import os
from dataclasses import dataclass, asdict, fields, replace

from ..utils.status_exception import ContractViolation
from .conflict_join import JoinParams
from .kb_core import parse_weight_ranges, _check_partition
from .repair import RepairThresholds
from .signatures import HashFamily, DEFAULT_SEED, SIMHASH_WIDTHS, WEIGHT_TRANSFORMS

COMBINED = "combined"
RUN_METHODS = ("hamming", "jaccard", COMBINED)
RUN_CONFIG_FILE = "run_config.json"


@dataclass(frozen=True)
class RunConfig:
    """
    RunConfig - every parameter of a clean run
    """
    input: str = None
    output_dir: str = None
    method: str = COMBINED
    simhash_bits: int = 64
    num_perms: int = 128
    num_bands: int = 32
    bucket_count: int = 128
    hamming_min: int | None = None
    jaccard_max: float = 0.01
    big: int = 100
    low: int = 5
    min_differential: int = 0
    min_set_size: int = 2
    subset_guard: float = 0.8
    hamming_blocks: int = 8
    require_overlap: bool = True
    weight_transform: str = "raw"
    histogram_buckets: str = "1,>1"
    seed: int = DEFAULT_SEED
    workers: int = 1
    strict: bool = False
    cache_dir: str | None = None

    @classmethod
    def from_kwargs(cls, **kwargs):
        """Build from keyword arguments, ignoring unknown keys and None values."""
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in kwargs.items() if k in names and v is not None})

    def with_values(self, **changes):
        return replace(self, **changes)

    @property
    def join_params(self):
        return JoinParams(
            hamming_min=self.hamming_min,
            num_bands=self.num_bands,
            bucket_count=self.bucket_count,
            jaccard_max=self.jaccard_max,
            min_set_size=self.min_set_size,
            subset_guard=self.subset_guard,
            hamming_blocks=self.hamming_blocks,
            require_overlap=self.require_overlap,
        )

    @property
    def thresholds(self):
        return RepairThresholds(self.big, self.low, self.min_differential)

    @property
    def family(self):
        return HashFamily(seed=self.seed)

    @property
    def weight_ranges(self):
        return parse_weight_ranges(self.histogram_buckets)

    def validate(self):
        """
        validate - re-check every numeric constraint before any work starts
        """
        if not self.input:
            raise ContractViolation("an input KB file is required")
        if not self.output_dir:
            raise ContractViolation("an output directory is required")
        if self.method not in RUN_METHODS:
            raise ContractViolation(f"method must be one of {RUN_METHODS}, got {self.method!r}")
        if self.simhash_bits not in SIMHASH_WIDTHS:
            raise ContractViolation(f"simhash_bits must be one of {SIMHASH_WIDTHS}, got {self.simhash_bits}")
        if self.num_perms < 1:
            raise ContractViolation("num_perms must be positive")
        if self.weight_transform not in WEIGHT_TRANSFORMS:
            raise ContractViolation(f"weight_transform must be one of {WEIGHT_TRANSFORMS}")
        if self.workers < 1:
            raise ContractViolation("workers must be >= 1")
        self.join_params.validate(num_perms=self.num_perms, width=self.simhash_bits)
        self.thresholds.validate()
        HashFamily(seed=self.seed)
        _check_partition(self.weight_ranges)
        return self

    def to_dict(self):
        return asdict(self)

    def write(self, output_dir=None):
        """
        write - echo the configuration as sorted-key JSON into the output directory
        """
        filename = os.path.join(output_dir or self.output_dir, RUN_CONFIG_FILE)
        with open(filename, mode="w", encoding="utf-8", newline="\n") as stream:
            json.dump(self.to_dict(), stream, indent=2, sort_keys=True)
            stream.write("\n")
        return filename
