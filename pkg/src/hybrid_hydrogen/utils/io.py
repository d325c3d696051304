#!/usr/bin/env python

# Copyright (c) 2020 - for information on the respective copyright owner
# see the NOTICE file and/or the repository.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writers and readers for run artifacts and os.path helpers.

Trajectory CSV (schema version 1):

    # hybrid_hydrogen trajectory v1
    t [a.u. time],r_p_x [bohr],...
    0,1.5,...

Values are written with 17 significant digits in a fixed column order, so
identical runs produce identical files.

Snapshot container (little endian):

    8 bytes   magic b'HHSNAP01'
    uint32    number of dimensions d
    4 bytes   dtype tag, b'f8  ' (float64) or b'c16 ' (complex128)
    d uint64  dimensions
    payload   row-major array data
"""

import json
import os

import numpy as np

from hybrid_hydrogen.utils.logging import get_logger

CSV_SCHEMA = 'hybrid_hydrogen trajectory v1'
SNAPSHOT_MAGIC = b'HHSNAP01'
_DTYPE_TAGS = {
    np.dtype('<f8'): b'f8  ',
    np.dtype('<c16'): b'c16 ',
}


def expandpath(path, check_file=False):
    """Expand environment variables and users given a path or a list of paths.

    Raises:
        FileNotFoundError: check_file is set and the path does not exist
    """
    if isinstance(path, list):
        return [expandpath(p, check_file) for p in path]
    path = os.path.expanduser(os.path.expandvars(str(path)))
    if check_file and not os.path.exists(path):
        raise FileNotFoundError(f'Path {path} does not exist - are all environment variables set?')
    return path


def __try_func(func):
    def wrapper(*args, **kwargs):
        try:
            func(*args, **kwargs)
        except Exception as err:
            get_logger().warning(str(err))

    return wrapper


@__try_func
def try_makedirs(path):
    """Try to make a directory"""
    os.makedirs(path, exist_ok=True)


def format_value(value):
    """Fixed 17 significant digit representation"""
    return '%.17g' % value


def write_csv(filename, columns, schema=CSV_SCHEMA):
    """Write (name, unit, values) columns to a CSV file.

    Args:
        filename(str): target path
        columns(list): (name, unit, values) triples of equal length
        schema(str): schema line written as comment on top

    Raises:
        ValueError: no columns or columns of different length
    """
    if not columns:
        raise ValueError('nothing to write, no columns given')
    values = [np.asarray(v, dtype=float).reshape(-1) for _, _, v in columns]
    lengths = {len(v) for v in values}
    if len(lengths) != 1:
        raise ValueError(f'columns have different lengths {sorted(lengths)}')

    lines = [f'# {schema}', ','.join(f'{name} [{unit}]' for name, unit, _ in columns)]
    table = np.column_stack(values) if values[0].size else np.zeros((0, len(values)))
    for row in table:
        lines.append(','.join(format_value(v) for v in row))
    with open(filename, 'w', newline='\n') as f:
        f.write('\n'.join(lines) + '\n')
    get_logger().debug(f'wrote {len(table)} rows to {filename}')


def read_csv(filename):
    """Read a trajectory CSV written by write_csv.

    Returns:
        tuple (schema, names, units, data) with data of shape (rows, columns)
    """
    with open(filename) as f:
        schema = f.readline()
        header = f.readline().strip()
        if not schema.startswith('# ') or not header:
            raise ValueError(f'{filename} is not a trajectory CSV')
        fields = header.split(',')
        names = [h.split(' [', 1)[0] for h in fields]
        units = [h.split(' [', 1)[1].rstrip(']') if ' [' in h else '' for h in fields]
        data = np.loadtxt(f, delimiter=',', ndmin=2)
    return schema[2:].strip(), names, units, data.reshape(-1, len(names))


def write_snapshot(filename, array):
    """Write a real or complex array to the binary snapshot container"""
    array = np.ascontiguousarray(array)
    if np.iscomplexobj(array):
        array = array.astype('<c16')
    else:
        array = array.astype('<f8')
    with open(filename, 'wb') as f:
        f.write(SNAPSHOT_MAGIC)
        f.write(np.array([array.ndim], dtype='<u4').tobytes())
        f.write(_DTYPE_TAGS[array.dtype])
        f.write(np.array(array.shape, dtype='<u8').tobytes())
        f.write(array.tobytes(order='C'))


def read_snapshot(filename):
    """Read an array from the binary snapshot container.

    Raises:
        ValueError: wrong magic bytes, unknown dtype tag or truncated payload
    """
    with open(filename, 'rb') as f:
        buf = f.read()
    if buf[:8] != SNAPSHOT_MAGIC:
        raise ValueError(f'{filename} is not a snapshot file')
    ndim = int(np.frombuffer(buf, dtype='<u4', count=1, offset=8)[0])
    tag = buf[12:16]
    dtypes = {t: d for d, t in _DTYPE_TAGS.items()}
    if tag not in dtypes:
        raise ValueError(f'{filename}: unknown dtype tag {tag!r}')
    shape = tuple(int(n) for n in np.frombuffer(buf, dtype='<u8', count=ndim, offset=16))
    offset = 16 + 8 * ndim
    count = int(np.prod(shape)) if ndim else 1
    if len(buf) - offset != count * dtypes[tag].itemsize:
        raise ValueError(f'{filename}: payload size does not match dimensions {shape}')
    return np.frombuffer(buf, dtype=dtypes[tag], count=count, offset=offset).reshape(shape).copy()


def _to_builtin(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f'{type(value).__name__} is not JSON serializable')


def write_json(filename, data):
    """Write a dictionary as sorted, indented JSON (numpy scalars and arrays allowed)"""
    with open(filename, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True, default=_to_builtin, allow_nan=True)
        f.write('\n')


def read_json(filename):
    with open(filename) as f:
        return json.load(f)
