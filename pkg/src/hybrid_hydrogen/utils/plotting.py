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

"""Static vector plots of trajectories and planar densities.

Figures are created without pyplot so that plotting works in worker processes
and without a display.
"""

import os

import numpy as np
from matplotlib.figure import Figure

from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

PLOT_FORMATS = ('svg', 'pdf')


def _check_format(filename):
    ext = os.path.splitext(filename)[1].lstrip('.').lower()
    if ext not in PLOT_FORMATS:
        raise ValueError(f'unsupported plot format "{ext}", expected one of {PLOT_FORMATS}')
    return ext


def _save(fig, filename):
    fmt = _check_format(filename)
    # fixed metadata keeps repeated runs byte-identical
    metadata = {'Date': None} if fmt == 'svg' else {'CreationDate': None}
    fig.savefig(filename, format=fmt, metadata=metadata)
    logger.debug(f'wrote plot {filename}')
    return filename


def plot_time_series(filename, t, series: dict, xlabel='t [a.u.]', ylabel='', title=None):
    """Line plot of one or more series over a common time axis.

    Args:
        filename(str): target file, the extension selects svg or pdf
        t: sample times
        series(dict): label -> values, each of the length of t
        xlabel(str), ylabel(str), title(str): axis annotation

    Raises:
        ValueError: empty time axis, no series or mismatching lengths
    """
    _check_format(filename)
    t = np.asarray(t, dtype=float)
    if t.size == 0 or not series:
        raise ValueError('cannot plot an empty series')
    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.add_subplot(1, 1, 1)
    for label, values in series.items():
        values = np.asarray(values, dtype=float)
        if values.shape != t.shape:
            raise ValueError(f'series "{label}" has shape {values.shape}, expected {t.shape}')
        ax.plot(t, values, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend(loc='best')
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return _save(fig, filename)


def plot_heatmaps(filename, densities: list, titles: list = None, xlabel='x [bohr]', ylabel='y [bohr]'):
    """Side by side heatmaps of planar densities (PlanarDensity instances).

    Raises:
        ValueError: no densities or an empty density
    """
    _check_format(filename)
    if not densities:
        raise ValueError('cannot plot an empty list of densities')
    titles = titles or [d.meta.get('quantity', '') for d in densities]
    fig = Figure(figsize=(4.0 * len(densities), 3.6))
    for i, (density, title) in enumerate(zip(densities, titles)):
        if np.size(density.values) == 0:
            raise ValueError(f'density "{title}" is empty')
        ax = fig.add_subplot(1, len(densities), i + 1)
        x0, x1, y0, y1 = density.extent
        # values[i, j] belongs to (x[i], y[j]), imshow expects rows along y
        image = ax.imshow(density.values.T, origin='lower', extent=(min(x0, x1), max(x0, x1), min(y0, y1),
                                                                     max(y0, y1)),
                          cmap='viridis', interpolation='nearest')
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    return _save(fig, filename)


def plot_trajectory(record, outdir, fmt='svg', prefix=''):
    """Standard plots of a TrajectoryRecord: center distance, momenta, populations.

    Returns:
        list of written files
    """
    if len(record) == 0:
        raise ValueError('cannot plot an empty trajectory')
    t = record['t']
    files = []
    separation = np.linalg.norm(record['r_e'] - record['r_p'], axis=-1)
    files.append(plot_time_series(os.path.join(outdir, f'{prefix}separation.{fmt}'), t,
                                  {'|<r_e> - <r_p>|': separation}, ylabel='bohr'))

    P = record['P']
    files.append(plot_time_series(os.path.join(outdir, f'{prefix}total_momentum.{fmt}'), t,
                                  {f'P_{"xyz"[i]}': P[:, i] for i in range(record.dim)},
                                  ylabel='a.u. momentum'))

    files.append(plot_time_series(os.path.join(outdir, f'{prefix}proton.{fmt}'), t,
                                  {f'r_p_{"xyz"[i]}': record['r_p'][:, i] for i in range(record.dim)},
                                  ylabel='bohr'))

    populations = record['populations']
    if populations.ndim == 2 and populations.shape[1] > 0:
        offset = int(record.meta.get('population_offset', 0))
        files.append(plot_time_series(os.path.join(outdir, f'{prefix}populations.{fmt}'), t,
                                      {f'|c_{j + offset}|^2': populations[:, j]
                                       for j in range(populations.shape[1])},
                                      ylabel='population'))
    return files
