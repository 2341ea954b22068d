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
# Name:        sweep.py
# Purpose:     one clean run per value of a parameter axis
#
# Author:      Luzzi Valerio
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------
import os

import pandas as pd

from ..cli.module_log import Logger
from ..utils import filesystem
from ..utils.strings import listify
from ..utils.status_exception import StatusException, ContractViolation
from .pipeline import _KBCleaner
from .run_config import RunConfig

SWEEP_FILE = "sweep.tsv"
SWEEP_COLUMNS = [
    "axis", "value", "status", "conflicts", "conflicts_hamming", "conflicts_jaccard",
    "triples_removed", "homonym_senses", "suskb_rows", "message",
]


def _bl(text):
    big, low = str(text).split(":")
    return {'big': int(big), 'low': int(low)}


SWEEP_AXES = {
    'bucket-count': lambda v: {'bucket_count': int(v)},
    'jaccard-max': lambda v: {'jaccard_max': float(v)},
    'bl': _bl,
    'num-bands': lambda v: {'num_bands': int(v)},
    'hamming-min': lambda v: {'hamming_min': int(v)},
}


def parse_axis_values(axis, values):
    """
    parse_axis_values - "64,128,256" (or a list) -> [(text, RunConfig changes)]
    """
    if axis not in SWEEP_AXES:
        raise ContractViolation(f"sweep axis must be one of {sorted(SWEEP_AXES)}, got {axis!r}")
    texts = listify(values, sep=",", trim=True) if isinstance(values, str) else [str(v) for v in values]
    if not texts:
        raise ContractViolation("a sweep needs at least one value")
    try:
        return [(text, SWEEP_AXES[axis](text)) for text in texts]
    except ValueError:
        raise ContractViolation(f"cannot parse the values {texts} of axis {axis!r}")


def sweep(config: RunConfig, axis, values, output_dir=None, backend=None, jid=None, s3_client=None) -> pd.DataFrame:
    """
    sweep - run the cleaner once per axis value into <output_dir>/<axis>==<value>/

    A failing point is recorded with its status and message and the sweep goes on.
    """
    output_dir = output_dir or config.output_dir
    points = parse_axis_values(axis, values)
    filesystem.mkdirs(output_dir)

    rows = []
    for text, changes in points:
        point = config.with_values(output_dir=os.path.join(output_dir, f"{axis}=={text}"), **changes)
        try:
            result = _KBCleaner(backend, jid, s3_client).run(config=point)
            metrics = result['body']['metrics']
            rows.append({
                'axis': axis, 'value': text, 'status': result['status'],
                ** {key: metrics[key] for key in SWEEP_COLUMNS[3:-1]},
                'message': '',
            })
        except StatusException as err:
            Logger.warning("sweep point %s=%s failed: %s", axis, text, err)
            rows.append({'axis': axis, 'value': text, 'status': err.status, 'message': str(err)})

    table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    table = table.astype(object).where(table.notna(), None)
    filesystem.write_tsv(os.path.join(output_dir, SWEEP_FILE), SWEEP_COLUMNS, table)
    return table
