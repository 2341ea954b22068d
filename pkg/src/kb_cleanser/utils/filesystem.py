# -------------------------------------------------------------------------------
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
# Name:        filesystem.py
# Purpose:     paths, timing and the UTF-8 TSV reader/writer
#
# Author:      Luzzi Valerio
#
# Created:     16/12/2019
# -------------------------------------------------------------------------------

import os
import datetime


def now():
    """
    now
    """
    return datetime.datetime.now()


def total_seconds_from(t):
    """
    total_seconds_from
    """
    return (datetime.datetime.now() - t).total_seconds()


def normpath(pathname):
    """
    normpath
    """
    if not pathname:
        return ""
    return os.path.normpath(pathname.replace("\\", "/")).replace("\\", "/")


def justfname(pathname):
    """
    justfname - returns the basename
    """
    return os.path.basename(normpath(pathname))


def mkdirs(pathname):
    """
    mkdirs - create a folder (and its parents), return True when it exists afterwards
    """
    os.makedirs(pathname, exist_ok=True)
    return os.path.isdir(pathname)


def read_tsv_lines(filename):
    """
    read_tsv_lines - yield (line_number, fields) of a UTF-8 TSV file, skipping blank and '#' lines
    """
    with open(filename, mode='r', encoding='utf-8') as stream:
        for line_number, line in enumerate(stream, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield line_number, line.split("\t")


def write_tsv(filename, columns, rows):
    """
    write_tsv - write rows as UTF-8 TSV with a single '#'-prefixed header line

    rows may be a pandas DataFrame or any iterable of tuples; None is written as an empty field
    """
    if hasattr(rows, "itertuples"):
        rows = rows.itertuples(index=False, name=None)
    with open(filename, mode='w', encoding='utf-8', newline='\n') as stream:
        stream.write("# " + "\t".join(columns) + "\n")
        for row in rows:
            stream.write("\t".join("" if value is None else str(value) for value in row) + "\n")
    return filename
