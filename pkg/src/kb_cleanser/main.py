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
# Name:        main.py
# Purpose:     kbclean command line: clean, gen, sweep, eval
#
# Author:      Luzzi Valerio
#
# Created:     18/03/2021
# -----------------------------------------------------------------------------
import os
import click
import pprint
import traceback

from .cli.module_log import Logger
from .utils import filesystem
from .utils.status_exception import StatusException
from .utils.module_prologo import prologo, epilogo

from .kb.oracle import EVAL_COLUMNS, evaluate_planted, read_triple_keys
from .kb.pipeline import _KBCleaner
from .kb.run_config import RunConfig, RUN_METHODS
from .kb.signatures import DEFAULT_SEED, WEIGHT_TRANSFORMS
from .kb.synthetic import SynthSpec, generate_synthetic
from .kb.sweep import SWEEP_AXES, SWEEP_FILE, sweep


class _ARG_NAMES():
    INPUT = {
        'aliases': ['--input', '--in', '-i'],
        'help': "Input KB dump, UTF-8 TSV concept<TAB>instance<TAB>weight.",
        'default': None,
        'example': '--input kb.tsv',
    }
    OUTPUT_DIR = {
        'aliases': ['--output-dir', '--output_dir', '--out-dir', '-o'],
        'help': "Output directory of the report files.",
        'default': None,
        'example': '--output-dir results/',
    }
    METHOD = {
        'aliases': ['--method', '-m'],
        'help': "Conflict join: hamming (SimHash), jaccard (MinHash LSH) or combined (their union).",
        'default': 'combined',
        'example': '--method combined',
    }
    SIMHASH_BITS = {
        'aliases': ['--simhash-bits', '--simhash_bits'],
        'help': "SimHash width in bits.",
        'default': 64,
        'example': '--simhash-bits 64',
    }
    NUM_PERMS = {
        'aliases': ['--num-perms', '--num_perms'],
        'help': "Number of MinHash rows.",
        'default': 128,
        'example': '--num-perms 128',
    }
    NUM_BANDS = {
        'aliases': ['--num-bands', '--num_bands'],
        'help': "Number of LSH bands, must divide num-perms.",
        'default': 32,
        'example': '--num-bands 32',
    }
    BUCKET_COUNT = {
        'aliases': ['--bucket-count', '--bucket_count', '--buckets'],
        'help': "Number of LSH buckets per band, used for disjoint pairs when overlap is not required.",
        'default': 128,
        'example': '--bucket-count 128',
    }
    HAMMING_MIN = {
        'aliases': ['--hamming-min', '--hamming_min'],
        'help': "Minimum Hamming distance of a conflicting pair. Default ceil(0.45 * simhash-bits).",
        'default': None,
        'example': '--hamming-min 29',
    }
    JACCARD_MAX = {
        'aliases': ['--jaccard-max', '--jaccard_max'],
        'help': "Maximum estimated Jaccard similarity of a conflicting pair.",
        'default': 0.01,
        'example': '--jaccard-max 0.01',
    }
    BIG = {
        'aliases': ['--big', '-B'],
        'help': "Weight B: the larger weight of an error is bigger than B, both weights of a homonym are.",
        'default': 100,
        'example': '-B 100',
    }
    LOW = {
        'aliases': ['--low', '-L'],
        'help': "Weight L: the smaller weight of an error is lower than L.",
        'default': 5,
        'example': '-L 5',
    }
    MIN_DIFFERENTIAL = {
        'aliases': ['--min-differential', '--min_differential'],
        'help': "Minimum weight difference required for an error verdict (0 disables the gate).",
        'default': 0,
        'example': '--min-differential 100',
    }
    MIN_SET_SIZE = {
        'aliases': ['--min-set-size', '--min_set_size'],
        'help': "Concept sets smaller than this are not compared.",
        'default': 2,
        'example': '--min-set-size 2',
    }
    SUBSET_GUARD = {
        'aliases': ['--subset-guard', '--subset_guard'],
        'help': "Overlap ratio |A n B| / min(|A|, |B|) at which a pair is treated as a subset and ignored.",
        'default': 0.8,
        'example': '--subset-guard 0.8',
    }
    HAMMING_BLOCKS = {
        'aliases': ['--hamming-blocks', '--hamming_blocks'],
        'help': "Number of bit blocks of the Hamming multi-index.",
        'default': 8,
        'example': '--hamming-blocks 8',
    }
    REQUIRE_OVERLAP = {
        'aliases': ['--require-overlap/--no-require-overlap'],
        'help': "Compare only concept pairs that share at least one instance.",
        'default': True,
        'example': '--no-require-overlap',
    }
    WEIGHT_TRANSFORM = {
        'aliases': ['--weight-transform', '--weight_transform'],
        'help': "SimHash vote weights: raw frequencies or 1 + ln(w).",
        'default': 'raw',
        'example': '--weight-transform log',
    }
    HISTOGRAM_BUCKETS = {
        'aliases': ['--histogram-buckets', '--histogram_buckets'],
        'help': "Weight buckets of histogram.tsv, a partition of [1, inf).",
        'default': '1,>1',
        'example': '--histogram-buckets "1,2-10,>10"',
    }
    SEED = {
        'aliases': ['--seed'],
        'help': "Seed of every hash function and random draw.",
        'default': DEFAULT_SEED,
        'example': '--seed 42',
    }
    WORKERS = {
        'aliases': ['--workers', '-j'],
        'help': "Worker processes for signatures, Hamming verification and classification.",
        'default': 1,
        'example': '--workers 4',
    }
    STRICT = {
        'aliases': ['--strict'],
        'help': "Fail on the first malformed input line instead of skipping it.",
        'default': False,
        'example': '--strict',
    }
    CACHE_DIR = {
        'aliases': ['--cache-dir', '--cache_dir'],
        'help': "Folder of the signature cache. No cache when not given.",
        'default': None,
        'example': '--cache-dir .kbclean-cache',
    }
    BUCKET_DESTINATION = {
        'aliases': ['--bucket-destination', '--bucket_destination', '--s3'],
        'help': "Destination bucket for the report files.",
        'default': None,
        'example': '--bucket-destination s3://my-bucket/path/to/prefix',
    }
    AXIS = {
        'aliases': ['--axis'],
        'help': "Swept parameter.",
        'default': None,
        'example': '--axis bucket-count',
    }
    VALUES = {
        'aliases': ['--values'],
        'help': "Comma separated values of the axis (B:L pairs for the bl axis).",
        'default': None,
        'example': '--values 64,128,256',
    }
    CONCEPTS = {
        'aliases': ['--concepts'],
        'help': "Number of concepts of the synthetic KB.",
        'default': 200,
        'example': '--concepts 200',
    }
    MIN_INSTANCES = {
        'aliases': ['--min-instances', '--min_instances'],
        'help': "Minimum instances per concept.",
        'default': 80,
        'example': '--min-instances 80',
    }
    MAX_INSTANCES = {
        'aliases': ['--max-instances', '--max_instances'],
        'help': "Maximum instances per concept.",
        'default': 120,
        'example': '--max-instances 120',
    }
    WEIGHT_ONE_SHARE = {
        'aliases': ['--weight-one-share', '--weight_one_share'],
        'help': "Share of triples of weight 1.",
        'default': 0.653,
        'example': '--weight-one-share 0.653',
    }
    POWER_EXPONENT = {
        'aliases': ['--power-exponent', '--power_exponent'],
        'help': "Exponent of the power law of the weights above 1.",
        'default': 1.5,
        'example': '--power-exponent 1.5',
    }
    MAX_WEIGHT = {
        'aliases': ['--max-weight', '--max_weight'],
        'help': "Largest generated weight.",
        'default': 10000,
        'example': '--max-weight 10000',
    }
    ERROR_RATE = {
        'aliases': ['--error-rate', '--error_rate'],
        'help': "Planted wrong triples per generated triple.",
        'default': 0.01,
        'example': '--error-rate 0.01',
    }
    HOMONYM_RATE = {
        'aliases': ['--homonym-rate', '--homonym_rate'],
        'help': "Planted homonym senses per generated triple.",
        'default': 0.002,
        'example': '--homonym-rate 0.002',
    }
    HEAVY_SHARE = {
        'aliases': ['--heavy-share', '--heavy_share'],
        'help': "Least share of triples above B that planted triples are copied from.",
        'default': 0.01,
        'example': '--heavy-share 0.01',
    }
    GROUND_TRUTH = {
        'aliases': ['--ground-truth', '--ground_truth', '--truth'],
        'help': "Planted wrong triples (ground_truth.tsv of gen).",
        'default': None,
        'example': '--ground-truth synth/ground_truth.tsv',
    }
    DETECTED = {
        'aliases': ['--detected', '--errors'],
        'help': "Detected wrong triples (errors.tsv of clean).",
        'default': None,
        'example': '--detected results/errors.tsv',
    }
    OUT = {
        'aliases': ['--out', '--output'],
        'help': "Output TSV file of the evaluation.",
        'default': None,
        'example': '--out eval.tsv',
    }


def _option(arg, **kwargs):
    return click.option(*arg['aliases'], default=arg['default'], help=arg['help'], show_default=True, **kwargs)


def common_options(func):
    """
    common_options - options shared by all Gecosistema CLI applications
    """
    options = [
        click.option(
            '--backend',
            type=click.STRING, required=False, default=None,
            help="The backend to use for sending back progress status updates to the backend server."
        ),
        click.option(
            '--jid',
            type=click.STRING, required=False, default=None,
            help="The job ID to use for sending back progress status updates to the backend server. If not provided, it will be generated automatically."
        ),
        click.option(
            '--version',
            is_flag=True, required=False, default=False,
            help="Show the version of the package."
        ),
        click.option(
            '--debug',
            is_flag=True, required=False, default=False,
            help="Debug mode."
        ),
        click.option(
            '--verbose',
            is_flag=True, required=False, default=False,
            help="Print some words more about what is doing."
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_options(func):
    """
    run_options - the RunConfig options shared by clean and sweep
    """
    options = [
        _option(_ARG_NAMES.INPUT, type=click.Path(dir_okay=False)),
        _option(_ARG_NAMES.OUTPUT_DIR, type=click.Path(file_okay=False)),
        _option(_ARG_NAMES.METHOD, type=click.Choice(RUN_METHODS, case_sensitive=False)),
        _option(_ARG_NAMES.SIMHASH_BITS, type=int),
        _option(_ARG_NAMES.NUM_PERMS, type=int),
        _option(_ARG_NAMES.NUM_BANDS, type=int),
        _option(_ARG_NAMES.BUCKET_COUNT, type=int),
        _option(_ARG_NAMES.HAMMING_MIN, type=int),
        _option(_ARG_NAMES.JACCARD_MAX, type=float),
        _option(_ARG_NAMES.BIG, type=int),
        _option(_ARG_NAMES.LOW, type=int),
        _option(_ARG_NAMES.MIN_DIFFERENTIAL, type=int),
        _option(_ARG_NAMES.MIN_SET_SIZE, type=int),
        _option(_ARG_NAMES.SUBSET_GUARD, type=float),
        _option(_ARG_NAMES.HAMMING_BLOCKS, type=int),
        _option(_ARG_NAMES.REQUIRE_OVERLAP),
        _option(_ARG_NAMES.WEIGHT_TRANSFORM, type=click.Choice(WEIGHT_TRANSFORMS, case_sensitive=False)),
        _option(_ARG_NAMES.HISTOGRAM_BUCKETS, type=str),
        _option(_ARG_NAMES.SEED, type=int),
        _option(_ARG_NAMES.WORKERS, type=int),
        _option(_ARG_NAMES.STRICT, is_flag=True),
        _option(_ARG_NAMES.CACHE_DIR, type=click.Path(file_okay=False)),
        _option(_ARG_NAMES.BUCKET_DESTINATION, type=str),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _failure(err, debug):
    """
    _failure - the result dict of a failed run
    """
    if isinstance(err, StatusException):
        return {
            'status': err.status,
            'body': {
                'message': str(err),
                ** ({"traceback": traceback.format_exc()} if debug else dict())
            }
        }
    return {
        "status": StatusException.ERROR,
        "body": {
            "error": str(err),
            ** ({"traceback": traceback.format_exc()} if debug else dict())
        }
    }


def _finish(output):
    """
    _finish - log the result and turn a non-OK status into exit code 1
    """
    Logger.debug(pprint.pformat(output))
    if output['status'] != StatusException.OK:
        body = output.get('body', {})
        click.echo(f"{output['status']}: {body.get('message', body.get('error', ''))}", err=True)
        click.get_current_context().exit(1)
    return output


# -----------------------------------------------------------------------------
# Python entry points
# -----------------------------------------------------------------------------
def run_pipeline(
    # --- Specific options ---
    bucket_destination = None,
    s3_client = None,

    # --- Common options ---
    backend = None,
    jid = None,
    version = False,
    debug = False,
    verbose = False,

    # --- RunConfig fields ---
    **kwargs
):
    """
    run_pipeline - ingest, join, repair and write the reports of one KB
    """
    t0, jid = prologo(backend, jid, version, verbose, debug)
    try:

        # DOC: -- Run the KB cleaner ---------------------------------------------
        cleaner = _KBCleaner(backend=backend, jid=jid, s3_client=s3_client)
        results = cleaner.run(config=RunConfig.from_kwargs(**kwargs), bucket_destination=bucket_destination)

    except Exception as err:
        results = _failure(err, debug)

    epilogo(t0, backend, jid, results['status'])
    return results


def run_generate(
    # --- Specific options ---
    output_dir = None,

    # --- Common options ---
    backend = None,
    jid = None,
    version = False,
    debug = False,
    verbose = False,

    # --- SynthSpec fields ---
    **kwargs
):
    """
    run_generate - write a synthetic KB with its planted errors and homonyms
    """
    t0, jid = prologo(backend, jid, version, verbose, debug)
    try:

        if not output_dir:
            raise StatusException(StatusException.INVALID, 'an output directory is required')
        spec = SynthSpec(**{k: v for k, v in kwargs.items() if v is not None})
        synthetic = generate_synthetic(spec)
        files = synthetic.write(output_dir)
        results = {
            'status': StatusException.OK,
            'body': {
                'files': files,
                'triples': len(synthetic.kb),
                'planted': len(synthetic.planted),
                'homonyms': len(synthetic.homonyms),
            }
        }

    except Exception as err:
        results = _failure(err, debug)

    epilogo(t0, backend, jid, results['status'])
    return results


def run_sweep(
    # --- Specific options ---
    axis = None,
    values = None,
    s3_client = None,

    # --- Common options ---
    backend = None,
    jid = None,
    version = False,
    debug = False,
    verbose = False,

    # --- RunConfig fields ---
    **kwargs
):
    """
    run_sweep - one clean run per axis value, the table goes to sweep.tsv
    """
    t0, jid = prologo(backend, jid, version, verbose, debug)
    try:

        kwargs.pop('bucket_destination', None)
        config = RunConfig.from_kwargs(**kwargs).validate()
        table = sweep(config, axis, values, backend=backend, jid=jid, s3_client=s3_client)
        failed = int((table['status'] != StatusException.OK).sum())
        results = {
            'status': StatusException.OK if failed == 0 else StatusException.PARTIAL,
            'body': {
                'file': os.path.join(config.output_dir, SWEEP_FILE),
                'points': len(table),
                'failed': failed,
                'table': table.to_dict(orient='records'),
            }
        }

    except Exception as err:
        results = _failure(err, debug)

    epilogo(t0, backend, jid, results['status'])
    return results


def run_eval(
    # --- Specific options ---
    ground_truth = None,
    detected = None,
    out = None,

    # --- Common options ---
    backend = None,
    jid = None,
    version = False,
    debug = False,
    verbose = False,
):
    """
    run_eval - precision and recall of detected wrong triples against the planted ones
    """
    t0, jid = prologo(backend, jid, version, verbose, debug)
    try:

        for name, filename in (('ground_truth', ground_truth), ('detected', detected)):
            if not filename or not os.path.isfile(filename):
                raise StatusException(StatusException.INVALID, f'{name} must be an existing file, got {filename!r}')
        report = evaluate_planted(read_triple_keys(ground_truth), read_triple_keys(detected))
        if out is not None:
            filesystem.write_tsv(out, EVAL_COLUMNS, [report.to_row()])
        results = {
            'status': StatusException.OK,
            'body': {
                'tsv': report.to_tsv_line(),
                'summary': report.summary(),
                'precision': report.precision,
                'recall': report.recall,
                ** ({'file': out} if out is not None else dict())
            }
        }

    except Exception as err:
        results = _failure(err, debug)

    epilogo(t0, backend, jid, results['status'])
    return results


# -----------------------------------------------------------------------------
# Command line
# -----------------------------------------------------------------------------
@click.group(context_settings={'auto_envvar_prefix': 'KBCLEAN'})
def cli():
    """
    kbclean - detect and repair wrong IsA triples of a knowledge base
    """


@cli.command('clean')
@run_options
@common_options
def cli_clean(**kwargs):
    """
    clean - run the cleansing pipeline on a KB dump
    """
    return _finish(run_pipeline(**kwargs))


@cli.command('gen')
@_option(_ARG_NAMES.OUTPUT_DIR, type=click.Path(file_okay=False))
@_option(_ARG_NAMES.CONCEPTS, type=int)
@_option(_ARG_NAMES.MIN_INSTANCES, type=int)
@_option(_ARG_NAMES.MAX_INSTANCES, type=int)
@_option(_ARG_NAMES.WEIGHT_ONE_SHARE, type=float)
@_option(_ARG_NAMES.POWER_EXPONENT, type=float)
@_option(_ARG_NAMES.MAX_WEIGHT, type=int)
@_option(_ARG_NAMES.ERROR_RATE, type=float)
@_option(_ARG_NAMES.HOMONYM_RATE, type=float)
@_option(_ARG_NAMES.HEAVY_SHARE, type=float)
@_option(_ARG_NAMES.BIG, type=int)
@_option(_ARG_NAMES.LOW, type=int)
@_option(_ARG_NAMES.SEED, type=int)
@common_options
def cli_generate(**kwargs):
    """
    gen - write a synthetic KB with planted errors and homonyms
    """
    return _finish(run_generate(**kwargs))


@cli.command('sweep')
@_option(_ARG_NAMES.AXIS, type=click.Choice(sorted(SWEEP_AXES)), required=True)
@_option(_ARG_NAMES.VALUES, type=str, required=True)
@run_options
@common_options
def cli_sweep(**kwargs):
    """
    sweep - one clean run per value of a parameter
    """
    return _finish(run_sweep(**kwargs))


@cli.command('eval')
@_option(_ARG_NAMES.GROUND_TRUTH, type=click.Path(dir_okay=False), required=True)
@_option(_ARG_NAMES.DETECTED, type=click.Path(dir_okay=False), required=True)
@_option(_ARG_NAMES.OUT, type=click.Path(dir_okay=False))
@common_options
def cli_eval(**kwargs):
    """
    eval - precision and recall of errors.tsv against ground_truth.tsv
    """
    output = _finish(run_eval(**kwargs))
    click.echo(output['body']['tsv'])
    click.echo(output['body']['summary'])
    return output
