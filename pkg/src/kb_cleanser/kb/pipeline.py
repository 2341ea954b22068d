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
# Name:        pipeline.py
# Purpose:     the clean run: ingest, signatures, joins, repair and reports
#
# Author:      Luzzi Valerio
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------
import os
from contextlib import contextmanager

from ..cli.module_log import Logger, log_stage
from ..utils import filesystem, module_s3
from ..utils.module_status import set_status
from ..utils.status_exception import StatusException, StageError
from .conflict_join import (
    CONFLICT_COLUMNS, hamming_join, jaccard_join, combine, sort_pairs,
)
from .kb_core import TRIPLE_COLUMNS, read_kb, frequency_histogram
from .repair import (
    ERROR_COLUMNS, SUSKB_COLUMNS, HOMONYM_COLUMNS, MIN_WEIGHT_COLUMNS,
    classify_pairs, apply_repairs, differential_report,
)
from .run_config import RunConfig, COMBINED
from .signature_cache import SignatureCache
from .signatures import compute_simhashes, compute_minhashes


CONFLICTS_FILE = "conflicts.tsv"
ERRORS_FILE = "errors.tsv"
HOMONYMS_FILE = "homonyms.tsv"
SUSKB_FILE = "suskb.tsv"
REPAIRED_FILE = "repaired.tsv"
DIFFERENTIAL_FILE = "differential.tsv"
HISTOGRAM_FILE = "histogram.tsv"
METRICS_FILE = "metrics.tsv"
TIMINGS_FILE = "timings.tsv"


class _KBCleaner():
    """
    Class to detect and repair wrong IsA triples through conflicting concept sets.
    """

    name = 'KBCleaner'

    def __init__(self, backend=None, jid=None, s3_client=None):
        self.backend = backend
        self.jid = jid
        self.s3_client = s3_client
        self.timings = []

    def argument_validation(self, config=None, bucket_destination=None, **kwargs):
        """
        Validate the arguments passed to the cleaner.
        """
        config = config if config is not None else RunConfig.from_kwargs(**kwargs)
        if not isinstance(config, RunConfig):
            raise StatusException(StatusException.INVALID, 'config must be a RunConfig')
        config.validate()

        if bucket_destination is not None:
            if type(bucket_destination) is not str:
                raise StatusException(StatusException.INVALID, 'bucket_destination must be a string')
            if not module_s3.iss3(bucket_destination):
                raise StatusException(StatusException.INVALID, 'bucket_destination must start with "s3://" or "/vsis3/"')

        return {
            'config': config,
            'bucket_destination': bucket_destination,
        }

    @contextmanager
    def stage(self, name, progress):
        """
        stage - time a pipeline stage, tag its failures and report it when done
        """
        counts = {}
        t = filesystem.now()
        try:
            yield counts
        except StatusException:
            raise
        except Exception as ex:
            raise StageError(name, str(ex)) from ex
        seconds = filesystem.total_seconds_from(t)
        self.timings.append((name, seconds))
        log_stage(name, seconds, **counts)
        set_status(self.backend, self.jid, progress, f"{name} done", stage=name)

    def signatures(self, config, eligible):
        """
        signatures - SimHash and/or MinHash signatures of the eligible sets, through the cache if any
        """
        family = config.family
        simhashes, minhashes = {}, {}

        def simhash_of(sets):
            return compute_simhashes(sets, family, config.simhash_bits, config.weight_transform, config.workers)

        def minhash_of(sets):
            return compute_minhashes(sets, family, config.num_perms, config.workers)

        if config.method in ('hamming', COMBINED):
            if config.cache_dir:
                cache = SignatureCache(config.cache_dir, 'simhash', config.simhash_bits, config.seed, config.weight_transform)
                simhashes = cache.resolve(eligible, simhash_of)
            else:
                simhashes = simhash_of(eligible)
        if config.method in ('jaccard', COMBINED):
            if config.cache_dir:
                cache = SignatureCache(config.cache_dir, 'minhash', config.num_perms, config.seed)
                minhashes = cache.resolve(eligible, minhash_of)
            else:
                minhashes = minhash_of(eligible)
        return simhashes, minhashes

    def write_reports(self, config, histogram, conflicts, repair, differential, metrics):
        """
        write_reports - every deterministic output file of the run
        """
        out = config.output_dir
        files = []

        def path(name):
            filename = os.path.join(out, name)
            files.append(filename)
            return filename

        filesystem.write_tsv(path(CONFLICTS_FILE), CONFLICT_COLUMNS, (p.to_row() for p in sort_pairs(conflicts)))
        filesystem.write_tsv(path(ERRORS_FILE), ERROR_COLUMNS, repair.errors)
        filesystem.write_tsv(path(HOMONYMS_FILE), HOMONYM_COLUMNS, repair.homonyms)
        filesystem.write_tsv(path(SUSKB_FILE), SUSKB_COLUMNS, repair.suskb)
        filesystem.write_tsv(path(REPAIRED_FILE), TRIPLE_COLUMNS, ((t.concept, t.instance, t.weight) for t in repair.repaired.triples))
        filesystem.write_tsv(path(DIFFERENTIAL_FILE), ['differential'] + MIN_WEIGHT_COLUMNS, differential.reset_index())
        filesystem.write_tsv(path(HISTOGRAM_FILE), ['bucket', 'percent'], ((k, f"{v:.4f}") for k, v in histogram.items()))
        filesystem.write_tsv(path(METRICS_FILE), ['metric', 'value'], metrics.items())
        files.append(config.write(out))
        return files

    def run(self, config=None, bucket_destination=None, **kwargs):
        """
        Run the KB cleaner.
        """

        # DOC: Validate the arguments
        validated_args = self.argument_validation(config=config, bucket_destination=bucket_destination, **kwargs)
        config = validated_args['config']
        bucket_destination = validated_args['bucket_destination']
        Logger.debug(f"Running KB cleaner with parameters: {config.to_dict()}")
        self.timings = []

        # DOC: Ingest the triples
        with self.stage('ingest', 10) as counts:
            kb = read_kb(config.input, strict=config.strict)
            sets = kb.concept_index
            report = kb.parse_report
            counts.update(triples=len(kb), concepts=len(sets), rejected=report.rejected)

        with self.stage('histogram', 15) as counts:
            histogram = frequency_histogram(kb, config.weight_ranges)
            counts.update(buckets=len(histogram))

        # DOC: Signatures of the concept sets big enough to compare
        with self.stage('signatures', 40) as counts:
            eligible = [s for s in sets.values() if s.size >= config.min_set_size]
            simhashes, minhashes = self.signatures(config, eligible)
            counts.update(eligible=len(eligible), simhash=len(simhashes), minhash=len(minhashes))

        # DOC: Conflict joins and their union
        params = config.join_params
        with self.stage('join', 65) as counts:
            s_h, s_j = set(), set()
            if simhashes:
                s_h = hamming_join(simhashes.values(), params, workers=config.workers, sets=sets)
            if minhashes:
                s_j = jaccard_join(minhashes.values(), sets, params)
            counts.update(hamming=len(s_h), jaccard=len(s_j))

        with self.stage('combine', 70) as counts:
            conflicts = combine(s_h, s_j)
            counts.update(conflicts=len(conflicts))

        # DOC: Repair the intersections
        with self.stage('repair', 85) as counts:
            classifications = classify_pairs(conflicts, kb, config.thresholds, config.workers)
            repair = apply_repairs(kb, classifications)
            differential = differential_report(classifications)
            verdicts = repair.verdict_counts(classifications)
            counts.update(classified=len(classifications), removed=len(repair.removed))

        metrics = {
            'triples_in': len(kb),
            'lines_rejected': kb.parse_report.rejected,
            'duplicates_merged': kb.parse_report.duplicates_merged,
            'concepts': len(sets),
            'concepts_compared': len(eligible),
            'conflicts_hamming': len(s_h),
            'conflicts_jaccard': len(s_j),
            'conflicts': len(conflicts),
            'intersection_instances': len(classifications),
            ** {f'verdict_{key}': value for key, value in verdicts.items()},
            'triples_removed': len(repair.removed),
            'triples_out': len(repair.repaired),
            'homonym_senses': len(repair.homonyms),
            'suskb_rows': len(repair.suskb),
        }

        # DOC: Write the report files
        with self.stage('write', 95) as counts:
            filesystem.mkdirs(config.output_dir)
            files = self.write_reports(config, histogram, conflicts, repair, differential, metrics)
            counts.update(files=len(files))
        timings_file = os.path.join(config.output_dir, TIMINGS_FILE)
        filesystem.write_tsv(timings_file, ['stage', 'seconds'], ((name, f"{s:.6f}") for name, s in self.timings))
        files.append(timings_file)

        # DOC: Store the bundle in a bucket if bucket_destination is provided
        uris = None
        if bucket_destination is not None:
            with self.stage('upload', 99) as counts:
                uris = module_s3.upload_bundle(files, bucket_destination, client=self.s3_client)
                if uris is None:
                    raise StageError('upload', f"Failed to upload the reports to bucket {bucket_destination}")
                counts.update(uploaded=len(uris))

        # DOC: Prepare outputs
        body = {
            'output_dir': config.output_dir,
            'files': [filesystem.justfname(f) for f in files],
            'metrics': metrics,
        }
        if uris is not None:
            body['uris'] = uris
        return {'status': StatusException.OK, 'body': body}


def clean(config: RunConfig, backend=None, jid=None, bucket_destination=None, s3_client=None):
    """
    clean - run the cleaner on a RunConfig, raising StatusException on failure
    """
    return _KBCleaner(backend, jid, s3_client).run(config=config, bucket_destination=bucket_destination)
