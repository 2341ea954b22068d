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
# Name:        module_version.py
# Purpose:     installed distribution version
#
# Author:      Luzzi Valerio
#
# Created:     29/09/2024
# -----------------------------------------------------------------------------
from importlib.metadata import version, PackageNotFoundError

# distribution name differs from the import package name
DISTRIBUTION = "kb-cleanser"


def get_version(distribution=DISTRIBUTION):
    """
    get_version - version of the installed distribution, "unknown" when running from a checkout
    """
    try:
        return version(distribution)
    except PackageNotFoundError:
        return "unknown"
