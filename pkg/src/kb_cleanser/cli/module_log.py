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
# Name:        module_log.py
# Purpose:     package logger and the per-stage log line
#
# Author:      Luzzi Valerio
#
# Created:     27/12/2022
# -----------------------------------------------------------------------------
import logging

# Configure the logger
logging.basicConfig(format="[%(levelname)-8s] %(message)s")

Logger = logging.getLogger("kb_cleanser")
Logger.setLevel(logging.WARNING)

# noisy third parties
logging.getLogger("botocore").setLevel(logging.CRITICAL)
logging.getLogger("boto3").setLevel(logging.CRITICAL)
logging.getLogger("urllib3").setLevel(logging.CRITICAL)


def set_log_debug():
    """Set the logger to debug level."""
    Logger.setLevel(logging.DEBUG)
    Logger.debug("Logger set to DEBUG level.")


def set_log_info():
    """Set the logger to info level."""
    Logger.setLevel(logging.INFO)
    Logger.info("Logger set to INFO level.")


def set_log_warning():
    """Set the logger back to the default warning level."""
    Logger.setLevel(logging.WARNING)


def set_log_error():
    """Set the logger to error level."""
    Logger.setLevel(logging.ERROR)


def set_log_critical():
    """Set the logger to critical level."""
    Logger.setLevel(logging.CRITICAL)


def log_stage(name, seconds, **counts):
    """
    log_stage - emit the single INFO line of a finished pipeline stage
    """
    details = ", ".join(f"{key}={value}" for key, value in counts.items())
    Logger.info("[stage] %s done in %.3fs (%s)", name, seconds, details)
