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

"""Uniform grids, fields sampled on them, and spectral helpers."""

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from hybrid_hydrogen.exceptions import GridError


def uniform_grid(half_width: float, points: int):
    """Periodic-friendly uniform grid x_j = (j - N/2) dx on [-half_width, half_width).

    Args:
        half_width(float): half extent of the grid
        points(int): number of points

    Returns:
        1d array of grid coordinates, x = 0 is always a grid point
    """
    if points < 2:
        raise GridError(f'grid needs at least two points, got {points}')
    if half_width <= 0:
        raise GridError(f'grid half width must be positive, got {half_width}')
    dx = 2.0 * half_width / points
    return (np.arange(points) - points // 2) * dx


def wavenumbers(points: int, spacing: float, derivative=False):
    """Angular wavenumbers in FFT order.

    For derivatives (odd powers of k) the unpaired Nyquist component of an even
    grid is set to zero so that real fields have exactly zero mean momentum.
    """
    k = 2.0 * np.pi * np.fft.fftfreq(points, d=spacing)
    if derivative and points % 2 == 0:
        k[points // 2] = 0.0
    return k


@dataclass(frozen=True)
class PlaneGrid:
    """Square uniform grid over the orbital plane"""
    half_width: float
    points: int = 256

    def __post_init__(self):
        if self.half_width <= 0:
            raise GridError(f'grid half width must be positive, got {self.half_width}')
        if self.points < 2:
            raise GridError(f'grid needs at least two points per axis, got {self.points}')

    @property
    def spacing(self):
        return 2.0 * self.half_width / self.points

    def coords(self):
        return uniform_grid(self.half_width, self.points)

    def mesh(self):
        """Arrays (X, Y) with indexing 'ij', i.e. X varies along axis 0"""
        x = self.coords()
        return np.meshgrid(x, x, indexing='ij')


@dataclass
class PlanarField:
    """Values on a uniform planar grid, values[i, j] belongs to (x[i], y[j])"""
    values: np.ndarray
    x: np.ndarray
    y: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def dx(self):
        return float(self.x[1] - self.x[0])

    @property
    def dy(self):
        return float(self.y[1] - self.y[0])

    @property
    def spacing(self):
        return self.dx, self.dy

    @property
    def extent(self):
        """(xmin, xmax, ymin, ymax)"""
        return float(self.x[0]), float(self.x[-1]), float(self.y[0]), float(self.y[-1])

    @property
    def half_width(self):
        return min(abs(self.x[0]), abs(self.x[-1]), abs(self.y[0]), abs(self.y[-1]))

    def integral(self):
        return self.values.sum() * self.dx * self.dy


class PlanarDensity(PlanarField):
    """Non-negative real values on a uniform planar grid"""

    def __init__(self, values, x, y, meta=None):
        values = np.asarray(values, dtype=float)
        if np.any(values < 0):
            raise ValueError('densities must be non-negative')
        super(PlanarDensity, self).__init__(values=values, x=np.asarray(x), y=np.asarray(y), meta=meta or {})

    def moments(self):
        """First moments (<x>, <y>) and second central moments of the normalized density"""
        X, Y = np.meshgrid(self.x, self.y, indexing='ij')
        total = self.values.sum()
        mx = (X * self.values).sum() / total
        my = (Y * self.values).sum() / total
        vx = ((X - mx) ** 2 * self.values).sum() / total
        vy = ((Y - my) ** 2 * self.values).sum() / total
        return np.array([mx, my]), np.array([vx, vy])


def gaussian_kernel_2d(width: float, spacing: float, truncate: float = 4.0):
    """Isotropic normalized Gaussian (std width) sampled on a square stencil.

    The stencil reaches truncate * width in each direction and sums to one.
    """
    half = int(np.ceil(truncate * width / spacing))
    offsets = np.arange(-half, half + 1) * spacing
    g = np.exp(-0.5 * (offsets / width) ** 2)
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def convolve_same(values, kernel):
    """Linear (zero padded) FFT convolution cropped to the shape of values.

    The kernel must have odd dimensions so that its center sits on a grid point.
    """
    if any(s % 2 == 0 for s in np.shape(kernel)):
        raise GridError('convolution kernels need odd dimensions')
    return fftconvolve(values, kernel, mode='same')
