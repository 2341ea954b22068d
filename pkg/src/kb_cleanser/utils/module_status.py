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
# Name:        module_status.py
# Purpose:     job progress reporting to an orchestrating backend
#
# Author:      Luzzi Valerio
#
# Created:     21/10/2022
# -----------------------------------------------------------------------------
import json
import datetime
import requests
from ..cli.module_log import Logger


def patch(url, data):
    """
    patch - send a PATCH request with a JSON body, return the decoded answer or {} on failure
    """
    try:
        headers = {"content-type": "application/json"}
        response = requests.patch(url, data=json.dumps(data), headers=headers, timeout=3)
        return json.loads(response.text)
    except Exception as ex:
        Logger.error("Error in patch:%s", ex)
        return {}


def status_url(backend, jid):
    """
    status_url - https://<backend>:8000/api/jobs/status/<jid> unless scheme or port are given
    """
    if not backend.startswith("http"):
        backend = f"https://{backend}"
    # default port is 8000
    if backend.count(":") < 2 and not backend.endswith("/"):
        backend = f"{backend}:8000"
    return f"{backend.rstrip('/')}/api/jobs/status/{jid}"


def status_payload(progress, message="", stage=None):
    """
    status_payload - body of the status update for a progress value (negative means failure)
    """
    utcnow = datetime.datetime.now(datetime.timezone.utc).isoformat()
    progress = int(progress)
    if progress < 0:
        data = {"status": "error", "progress": progress, "error": message, "endtime": utcnow}
    elif progress == 0:
        data = {"status": "pending", "progress": progress}
    elif progress >= 100:
        data = {"status": "done", "progress": 100, "endtime": utcnow}
    else:
        data = {"status": "running", "progress": progress}
    if stage:
        data["stage"] = stage
    return data


def set_status(backend, jid, progress, message="", stage=None):
    """
    set_status - log the message and, when a backend is configured, report the job progress
    """
    if message and progress >= 0:
        Logger.debug(message)
    elif message and progress < 0:
        Logger.error(message)
    if backend and jid:
        return patch(status_url(backend, jid), status_payload(progress, message, stage))
    return {}
