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
# Name:        module_logo.py
# Purpose:     banner printed in debug mode
#
# Author:      Luzzi Valerio
#
# Created:     27/12/2022
# -----------------------------------------------------------------------------
banner = r"""
     _    _          _
    | | _| |__   ___| | ___  __ _ _ __
    | |/ / '_ \ / __| |/ _ \/ _` | '_ \
    |   <| |_) | (__| |  __/ (_| | | | |
    |_|\_\_.__/ \___|_|\___|\__,_|_| |_|

    IsA knowledge-base cleansing
    """


def logo():
    """
    logo - return the banner
    """
    return banner
