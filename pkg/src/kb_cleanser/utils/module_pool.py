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
# Name:        module_pool.py
# Purpose:     order-preserving worker pool
#
# Author:      Luzzi Valerio
#
# Created:     14/10/2026
# -----------------------------------------------------------------------------
from concurrent.futures import ProcessPoolExecutor


def parallel_map(func, items, workers=1, chunksize=64):
    """
    parallel_map - map func over items with a process pool, results keep the input order

    func must be picklable (a module level function or a functools.partial of one)
    """
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=max(1, chunksize)))


def chunked(items, size):
    """
    chunked - split a list into consecutive chunks of at most size items
    """
    items = list(items)
    return [items[i:i + size] for i in range(0, len(items), size)]
