# ---------------------------------------------------------------------------
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
# Name:        module_prologo.py
# Purpose:     common start/end of every command
#
# Author:      Luzzi Valerio
#
# Created:     27/12/2022
# ---------------------------------------------------------------------------

import os
import sys
from ..cli.module_log import Logger, set_log_debug, set_log_info, set_log_warning
from ..cli.module_version import get_version
from ..cli.module_logo import logo
from .filesystem import now, total_seconds_from
from .module_status import set_status


def prologo(backend, jid, version, verbose, debug):
    """
    prologo - set the log level, print banner/version, report the job as pending
    """
    t = now()
    jid = jid or os.getpid()

    set_log_warning()
    if verbose:
        set_log_info()
    if debug:
        set_log_debug()

    set_status(backend, jid, 0, "Starting job...")

    if debug:
        print(logo())

    if version:
        print(f"Version: {get_version()}")
        sys.exit(0)

    return t, jid


def epilogo(t, backend, jid, status="OK"):
    """
    epilogo - report the job as done (or failed) with its elapsed time
    """
    elapsed = total_seconds_from(t)
    if status == "OK":
        set_status(backend, jid, 100, f"Job completed in {elapsed:.2f}s.")
    else:
        set_status(backend, jid, -1, f"Job failed with status {status} after {elapsed:.2f}s.")
    Logger.debug("elapsed %.2fs", elapsed)
    return elapsed
