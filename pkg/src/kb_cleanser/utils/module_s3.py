# -------------------------------------------------------------------------------
# MIT License:
# Copyright (c) 2012-2022 Luzzi Valerio
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
# Name:        module_s3.py
# Purpose:     upload of the report bundle to an S3 prefix
#
# Author:      Luzzi Valerio
#
# Created:     21/04/2022
# -------------------------------------------------------------------------------
import os
import boto3
from botocore.exceptions import ClientError, NoCredentialsError
from .filesystem import justfname
from ..cli.module_log import Logger


def iss3(uri):
    """
    iss3
    """
    return bool(uri) and isinstance(uri, str) and uri.startswith(("s3://", "/vsis3/"))


def get_bucket_name_key(uri):
    """
    get_bucket_name_key - get bucket name and key name from uri
    """
    bucket_name, key_name = None, None
    if not uri:
        pass
    elif uri.startswith("s3://"):
        # s3://bucket/prefix/file.tsv
        _, _, bucket_name, key_name = (uri.split("/", 3) + [""])[:4]
    elif uri.startswith("/vsis3/"):
        # /vsis3/bucket/prefix/file.tsv
        _, _, bucket_name, key_name = (uri.split("/", 3) + [""])[:4]
    else:
        bucket_name, key_name = None, uri
    return bucket_name, key_name


def get_client(client=None):
    """
    get_client
    """
    return client if client else boto3.client('s3')


def s3_upload(filename, uri, client=None):
    """
    s3_upload - upload a local file to s3://bucket/key, return True on success
    """
    try:
        bucket_name, key = get_bucket_name_key(uri)
        if bucket_name and key and filename and os.path.isfile(filename):
            client = get_client(client)
            client.upload_file(Filename=filename, Bucket=bucket_name, Key=key)
            Logger.debug("uploaded %s to %s", filename, uri)
            return True
    except ClientError as ex:
        Logger.error(ex)
    except NoCredentialsError as ex:
        Logger.error(ex)
    return False


def upload_bundle(filenames, destination, client=None):
    """
    upload_bundle - upload every file under the destination prefix, return the uploaded uris
    """
    client = get_client(client)
    uris = []
    for filename in filenames:
        uri = f"{destination.rstrip('/')}/{justfname(filename)}"
        if not s3_upload(filename, uri, client=client):
            return None
        uris.append(uri)
    return uris
