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

"""Full quantum description of the atom.

The two-body wave function factorizes into a center-of-mass Gaussian and a
relative-motion wave packet built from circular states. This module builds and
evolves the relative packet, computes its observables from the coefficients
alone, and produces planar densities, coarse-grained single-particle
densities and reduced wave functions for visualization.

Sign convention: with x = r_e - r_p and R the center of mass,
r_e = R + (m_p/M) x and r_p = R - (m_e/M) x. Single-particle quantities thus
involve psi_c(r_e - (m_p/M) x) for the electron and psi_c(r_p + (m_e/M) x)
for the proton.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from hybrid_hydrogen.basis import bohr_energy, bohr_radius, circular_dipoles, log_circular_amplitude
from hybrid_hydrogen.core import AtomParams, PacketSpec
from hybrid_hydrogen.exceptions import GridError, PacketRepresentationError
from hybrid_hydrogen.math.grids import (PlaneGrid, PlanarDensity, PlanarField, convolve_same,
                                        gaussian_kernel_2d)
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

# relative weight a packet may lose by clipping the window at n = 1
MAX_CLIPPED_WEIGHT = 1e-6
# relative weight a packet may lose outside its window
MAX_TRUNCATED_WEIGHT = 1e-12
# spreading criterion, fraction of the initial |<r>|
SPREAD_THRESHOLD = 0.1
# samples per Kepler period in time scans
SCAN_RESOLUTION = 64
# relative amplitude at which the center-of-mass kernel of reduced functions is cut
COM_AMPLITUDE_CUTOFF = 1e-8


@dataclass(frozen=True)
class CircularPacket:
    """Superposition of circular states with coefficients given at `time`.

    Attributes:
        n: principal quantum numbers (consecutive integers)
        coeffs: complex coefficients, unit norm
        params: atom parameters
        spec: packet specification the coefficients were built from
        time: time the coefficients refer to
        mass: mass entering energies and length scales, defaults to the reduced mass
    """
    n: np.ndarray
    coeffs: np.ndarray
    params: AtomParams
    spec: PacketSpec
    time: float = 0.0
    mass: Optional[float] = None

    @property
    def particle_mass(self):
        return self.params.mu if self.mass is None else self.mass

    @property
    def energies(self):
        return bohr_energy(self.n, self.params, self.particle_mass)

    @property
    def dipoles(self):
        return circular_dipoles(self.n, self.params, self.particle_mass)

    def norm(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def as_dict(self):
        """Map n -> c_n"""
        return {int(n): complex(c) for n, c in zip(self.n, self.coeffs)}

    def coeffs_at(self, t):
        """Coefficients at time(s) t, shape (..., len(n))"""
        dt = np.asarray(t, dtype=float)[..., None] - self.time
        return self.coeffs * np.exp(-1j * self.energies * dt / self.params.hbar)


@dataclass(frozen=True)
class ComState:
    """Gaussian center-of-mass state.

    Attributes:
        sigma0: initial width
        time: time the state is evaluated at
        mode: 'frozen' keeps the width, 'free-spreading' evolves it as a free particle of mass M
        drift_momentum: momentum of the center of mass
    """
    sigma0: float
    time: float = 0.0
    mode: str = 'frozen'
    drift_momentum: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise ValueError(f'sigma0 must be positive, got {self.sigma0}')
        if self.mode not in ('frozen', 'free-spreading'):
            raise ValueError(f'unknown center-of-mass mode "{self.mode}"')

    def _tau(self, total_mass, hbar=1.0):
        if self.mode == 'frozen':
            return 0.0
        return hbar * self.time / (2.0 * total_mass * self.sigma0 ** 2)

    def width(self, total_mass, hbar=1.0):
        """Density width sigma(t) >= sigma0"""
        return self.sigma0 * math.sqrt(1.0 + self._tau(total_mass, hbar) ** 2)

    def center(self, total_mass, dim=3):
        return np.asarray(self.drift_momentum, dtype=float)[:dim] * self.time / total_mass

    def amplitude(self, R, total_mass, hbar=1.0):
        """Complex amplitude at positions R (..., dim), normalized in dim dimensions"""
        R = np.asarray(R, dtype=float)
        dim = R.shape[-1]
        P = np.asarray(self.drift_momentum, dtype=float)[:dim]
        width = self.sigma0 * (1.0 + 1j * self._tau(total_mass, hbar))
        shifted = R - self.center(total_mass, dim)
        envelope = np.exp(-np.sum(shifted ** 2, axis=-1) / (4.0 * self.sigma0 * width))
        phase = np.exp(1j * (R @ P - 0.5 * P @ P * self.time / total_mass) / hbar)
        return (2.0 * np.pi) ** (-dim / 4.0) * width ** (-dim / 2.0) * envelope * phase


@dataclass(frozen=True)
class TimeScales:
    t_kepler: float
    t_spread: float
    t_rev: float

    def state_dict(self):
        return {'t_kepler': self.t_kepler, 't_spread': self.t_spread, 't_rev': self.t_rev}


def _gaussian_weight_budget(spec: PacketSpec):
    # squared weights of the untruncated Gaussian over a generous integer range
    lo = math.floor(spec.n_bar - 14.0 * spec.sigma_n) - 1
    hi = math.ceil(spec.n_bar + 14.0 * spec.sigma_n) + 1
    k = np.arange(lo, hi + 1)
    p = np.exp(-0.5 * ((k - spec.n_bar) / spec.sigma_n) ** 2)
    total = p.sum()
    if total == 0.0:
        return 0.0, 0.0
    clipped = p[k < 1].sum() / total
    outside = p[(k >= 1) & ((k < spec.n_lo) | (k > spec.n_hi))].sum() / total
    return clipped, outside


def build_packet(spec: PacketSpec, params: AtomParams, mass=None) -> CircularPacket:
    """Gaussian superposition of circular states.

    c_n is proportional to exp(-(n - n_bar)^2 / (4 sigma_n^2)), real and positive,
    normalized over spec.window.

    Args:
        spec(PacketSpec): packet specification
        params(AtomParams): atom parameters
        mass(float): mass for energies and lengths, defaults to the reduced mass

    Returns:
        CircularPacket at t = 0

    Raises:
        PacketRepresentationError: window clipping at n = 1 discards more than 1e-6 of the
            weight, or the window truncates more than 1e-12
    """
    clipped, outside = _gaussian_weight_budget(spec)
    if clipped > MAX_CLIPPED_WEIGHT:
        raise PacketRepresentationError(
            f'packet n_bar={spec.n_bar}, sigma_n={spec.sigma_n} loses {clipped:.3g} of its weight below n=1')
    if outside > MAX_TRUNCATED_WEIGHT:
        raise PacketRepresentationError(
            f'window {spec.window} truncates {outside:.3g} of the packet weight')

    n = np.arange(spec.n_lo, spec.n_hi + 1)
    weights = np.exp(-((n - spec.n_bar) ** 2) / (4.0 * spec.sigma_n ** 2))
    if not np.any(weights > 0):
        # vanishing width, the nearest eigenstate carries everything
        weights = (n == int(round(spec.n_bar))).astype(float)
    coeffs = (weights / np.linalg.norm(weights)).astype(complex)
    logger.debug(f'built packet over n={spec.n_lo}..{spec.n_hi} with {len(n)} states')
    return CircularPacket(n=n, coeffs=coeffs, params=params, spec=spec, time=0.0, mass=mass)


def evolve_coeffs(packet: CircularPacket, t: float) -> CircularPacket:
    """Packet at time t, c_n(t) = c_n(t0) exp(-i E_n (t - t0) / hbar)"""
    if not math.isfinite(t):
        raise ValueError(f'time must be finite, got {t}')
    return replace(packet, coeffs=packet.coeffs_at(t), time=float(t))


def _center_sum(packet: CircularPacket, t):
    c = packet.coeffs_at(t)
    if c.shape[-1] < 2:
        return np.zeros(c.shape[:-1], dtype=complex), c
    return np.sum(np.conj(c[..., :-1]) * c[..., 1:] * packet.dipoles, axis=-1), c


def _as_vector(x, y):
    return np.stack([x, y, np.zeros_like(x)], axis=-1)


def relative_center(packet: CircularPacket, t) -> np.ndarray:
    """Center <r>(t) of the relative packet.

    With S = sum_n c_n^* c_{n+1} d_n one has <x> = 2 Re S and <y> = -2 Im S.

    Args:
        packet(CircularPacket): packet
        t: time or array of times

    Returns:
        array (..., 3) in bohr, z identically zero
    """
    s, _ = _center_sum(packet, t)
    return _as_vector(2.0 * s.real, -2.0 * s.imag)


def relative_momentum(packet: CircularPacket, t) -> np.ndarray:
    """Momentum <p>(t) = mass d<r>/dt from analytic differentiation of the phases"""
    c = packet.coeffs_at(t)
    if c.shape[-1] < 2:
        return np.zeros(c.shape[:-1] + (3,))
    omega = np.diff(packet.energies) / packet.params.hbar
    ds = np.sum(-1j * omega * np.conj(c[..., :-1]) * c[..., 1:] * packet.dipoles, axis=-1)
    return packet.particle_mass * _as_vector(2.0 * ds.real, -2.0 * ds.imag)


def autocorrelation(packet: CircularPacket, t):
    """|<psi(t0)|psi(t)>|^2 with t0 the time of the packet coefficients"""
    dt = np.asarray(t, dtype=float)[..., None] - packet.time
    weights = np.abs(packet.coeffs) ** 2
    amplitude = np.sum(weights * np.exp(-1j * packet.energies * dt / packet.params.hbar), axis=-1)
    return np.abs(amplitude) ** 2


def kepler_period(n_bar, params: AtomParams, mass=None):
    """Classical period 2 pi n^3 / mass at the mean principal quantum number"""
    mass = params.mu if mass is None else mass
    return 2.0 * np.pi * n_bar ** 3 * params.m_e / mass


def localization(packet: CircularPacket, t):
    """|<r>(t)| / |<r>(t0)|"""
    r0 = np.linalg.norm(relative_center(packet, packet.time))
    if r0 == 0.0:
        return np.zeros(np.shape(t))
    return np.linalg.norm(relative_center(packet, t), axis=-1) / r0


def spreading_time(packet: CircularPacket, t_kepler: float, horizon: float,
                   threshold=SPREAD_THRESHOLD, resolution=SCAN_RESOLUTION):
    """First time the localization stays below threshold for one Kepler period.

    Returns:
        time (float), nan if the packet never spreads within the horizon
    """
    dt = t_kepler / resolution
    times = packet.time + np.arange(0.0, horizon + t_kepler + dt, dt)
    below = localization(packet, times) < threshold
    # sliding window of one period (resolution + 1 samples)
    window = resolution + 1
    run = np.convolve(below.astype(int), np.ones(window, dtype=int), mode='valid')
    hits = np.nonzero(run == window)[0]
    hits = hits[times[hits] - packet.time <= horizon]
    if len(hits) == 0:
        return float('nan')
    return float(times[hits[0]] - packet.time)


def relocalization_time(packet: CircularPacket, t_kepler: float, t_rev: float, resolution=SCAN_RESOLUTION):
    """Time of maximal localization within [t_rev / 2, 3 t_rev / 2]"""
    times = packet.time + np.arange(0.5 * t_rev, 1.5 * t_rev, t_kepler / resolution)
    values = localization(packet, times)
    i = int(np.argmax(values))
    return float(times[i] - packet.time), float(values[i])


def revival_time(packet: CircularPacket, t_kepler: float, t_rev: float, resolution=SCAN_RESOLUTION):
    """Full autocorrelation revival, searched within [t_rev, 2.2 t_rev].

    For circular packets the full revival happens at twice the relocalization time.
    """
    times = packet.time + np.arange(t_rev, 2.2 * t_rev, t_kepler / resolution)
    values = autocorrelation(packet, times)
    i = int(np.argmax(values))
    return float(times[i] - packet.time), float(values[i])


def time_scales(spec: PacketSpec, params: AtomParams, mass=None) -> TimeScales:
    """Kepler period, spreading time and relocalization time of a packet.

    t_kepler = 2 pi n_bar^3 / mass, t_rev = (n_bar / 3) t_kepler. The spreading
    time is measured on the packet built from spec.
    """
    if spec.n_bar < 5:
        raise ValueError(f'time scales need n_bar >= 5, got {spec.n_bar}')
    t_kepler = kepler_period(spec.n_bar, params, mass)
    t_rev = spec.n_bar / 3.0 * t_kepler
    packet = build_packet(spec, params, mass)
    t_spread = spreading_time(packet, t_kepler, horizon=t_rev)
    if not (t_kepler < t_spread < t_rev):
        logger.warning(f't_spread={t_spread:.6g} not between t_kepler={t_kepler:.6g} and t_rev={t_rev:.6g}')
    return TimeScales(t_kepler=t_kepler, t_spread=t_spread, t_rev=t_rev)


def sample_field_plane(packet: CircularPacket, t: float, grid: PlaneGrid) -> PlanarField:
    """Complex relative wave function psi_r(x, y, z=0, t) on the orbital plane"""
    a = bohr_radius(packet.params, packet.particle_mass)
    required = 1.5 * packet.spec.n_bar ** 2 * a
    if grid.half_width < required:
        raise GridError(f'grid half width {grid.half_width:.6g} does not cover 1.5 n_bar^2 a = {required:.6g}')

    x = grid.coords()
    X, Y = grid.mesh()
    r = np.hypot(X, Y)
    phi = np.arctan2(Y, X)
    c = packet.coeffs_at(t)
    psi = np.zeros(r.shape, dtype=complex)
    for n, cn in zip(packet.n, c):
        log_amp = log_circular_amplitude(int(n), r, 0.5 * np.pi, packet.params, packet.particle_mass,
                                         check_range=False)
        psi += cn * np.exp(log_amp + 1j * (int(n) - 1) * phi)
    return PlanarField(values=psi, x=x, y=x.copy(), meta={'t': float(t), 'quantity': 'psi_r'})


def sample_density_plane(packet: CircularPacket, t: float, grid: PlaneGrid) -> PlanarDensity:
    """Relative density |psi_r(x, y, z=0, t)|^2 on the orbital plane"""
    psi = sample_field_plane(packet, t, grid)
    return PlanarDensity(np.abs(psi.values) ** 2, psi.x, psi.y, meta={'t': float(t), 'quantity': 'rho_r'})


def electron_kernel_width(sigma: float, params: AtomParams):
    """Width M sigma / m_p of the kernel smearing the relative density into the electron density"""
    return params.M * sigma / params.m_p


def proton_kernel_width(sigma: float, params: AtomParams):
    """Width M sigma / m_e of the kernel smearing the relative density into the proton density"""
    return params.M * sigma / params.m_e


def coarse_grain(density: PlanarDensity, kernel_width: float) -> PlanarDensity:
    """Convolution with a normalized isotropic Gaussian of standard deviation kernel_width.

    Raises:
        GridError: kernel wider than the grid half extent
    """
    if kernel_width < 0:
        raise ValueError(f'kernel width must be non-negative, got {kernel_width}')
    meta = dict(density.meta, kernel_width=kernel_width)
    if kernel_width == 0:
        return PlanarDensity(density.values.copy(), density.x, density.y, meta=meta)
    if kernel_width > density.half_width:
        raise GridError(f'kernel width {kernel_width:.6g} exceeds grid half extent {density.half_width:.6g}')

    kernel = gaussian_kernel_2d(kernel_width, density.dx)
    values = np.clip(convolve_same(density.values, kernel), 0.0, None)
    return PlanarDensity(values, density.x, density.y, meta=meta)


def _fraction(which, params: AtomParams):
    if which == 'electron':
        return params.m_p / params.M, 1.0
    if which == 'proton':
        return params.m_e / params.M, -1.0
    raise ValueError(f'unknown particle "{which}", expected electron or proton')


def particle_density(packet: CircularPacket, t: float, com: ComState, which: str,
                     grid: PlaneGrid) -> PlanarDensity:
    """Coarse-grained electron or proton density on the orbital plane, in particle coordinates.

    The relative density is sampled on a grid that covers both the orbit and
    four kernel widths, smeared with the particle's kernel and mapped to
    particle coordinates r = +/- f u with f = m_p/M (electron) or m_e/M (proton).
    """
    f, sign = _fraction(which, packet.params)
    sigma = com.width(packet.params.M, packet.params.hbar)
    kernel_width = sigma / f
    if 4.0 * kernel_width > grid.half_width:
        grid = PlaneGrid(half_width=max(grid.half_width, 4.0 * kernel_width), points=grid.points)
    smeared = coarse_grain(sample_density_plane(packet, t, grid), kernel_width)
    return _to_particle_coordinates(smeared, f, sign, which)


def _to_particle_coordinates(field, f, sign, which):
    # densities pick up the Jacobian of r = f u, amplitudes do not
    values = field.values / f ** 2 if isinstance(field, PlanarDensity) else field.values
    x, y = sign * f * field.x, sign * f * field.y
    if sign < 0:
        values, x, y = values[::-1, ::-1], x[::-1], y[::-1]
    meta = dict(field.meta, quantity=f'rho_{which[0]}', particle=which)
    if isinstance(field, PlanarDensity):
        return PlanarDensity(values, x, y, meta=meta)
    return PlanarField(values=values, x=x, y=y, meta=dict(meta, quantity=f'psi_{which[0]}'))


def particle_centers(rel_center, params: AtomParams):
    """Centers (<r_e>, <r_p>) = ((m_p/M) <r>, -(m_e/M) <r>) in the frame where the atom rests"""
    rel_center = np.asarray(rel_center, dtype=float)
    return (params.m_p / params.M) * rel_center, -(params.m_e / params.M) * rel_center


def reduce_field(field: PlanarField, com: ComState, which: str, params: AtomParams) -> PlanarField:
    """Reduced wave function of one particle from a planar relative wave function.

    Evaluates the integral of psi_r(x) psi_c(r_e - (m_p/M) x) (electron) or
    psi_r(x) psi_c(r_p + (m_e/M) x) (proton) over the plane. In relative units
    u = r / f this is a convolution of psi_r with psi_c(f v), carried out with a
    zero padded FFT.

    Raises:
        GridError: center-of-mass kernel wider than the grid or not resolved by it
    """
    f, sign = _fraction(which, params)
    spacing = field.dx
    sigma_u = com.width(params.M, params.hbar) / f
    if sigma_u > field.half_width:
        raise GridError(f'center-of-mass width {sigma_u:.6g} exceeds grid half extent {field.half_width:.6g}')
    if sigma_u < spacing:
        raise GridError(f'center-of-mass width {sigma_u:.6g} not resolved by grid spacing {spacing:.6g}')

    shift = np.linalg.norm(com.center(params.M, dim=2)) / f
    # |psi_c| = exp(-v^2 / (4 sigma^2)) drops to the cutoff at this reach
    reach = 2.0 * sigma_u * math.sqrt(math.log(1.0 / COM_AMPLITUDE_CUTOFF))
    # offsets beyond the grid diameter do not reach any output point
    half = min(int(np.ceil((reach + shift) / spacing)), max(field.values.shape) - 1)
    offsets = np.arange(-half, half + 1) * spacing
    V = np.stack(np.meshgrid(offsets, offsets, indexing='ij'), axis=-1)
    # psi_c(f v) for the electron, psi_c(-f v) for the proton
    kernel = com.amplitude(sign * f * V, params.M, params.hbar)
    values = convolve_same(field.values, kernel) * field.dx * field.dy
    reduced = PlanarField(values=values, x=field.x, y=field.y, meta=dict(field.meta))
    return _to_particle_coordinates(reduced, f, sign, which)


def reduced_density_gap(field: PlanarField, com: ComState, which: str, params: AtomParams) -> float:
    """L1 distance between |reduced|^2 and the coarse-grained particle density.

    Both live on the particle grid of `field`. The distance does not vanish:
    the squared reduced function is not the particle density.
    """
    f, sign = _fraction(which, params)
    reduced = reduce_field(field, com, which, params)
    density = PlanarDensity(np.abs(field.values) ** 2, field.x, field.y, meta=dict(field.meta))
    smeared = coarse_grain(density, com.width(params.M, params.hbar) / f)
    particle = _to_particle_coordinates(smeared, f, sign, which)
    return float(np.sum(np.abs(np.abs(reduced.values) ** 2 - particle.values)) * abs(particle.dx * particle.dy))


def reduced_wavefunction(packet: CircularPacket, com: ComState, which: str, grid: PlaneGrid,
                         t: float) -> PlanarField:
    """Reduced wave function of the electron or proton on the orbital plane at time t.

    Note that its squared modulus is not the coarse-grained particle density.
    """
    return reduce_field(sample_field_plane(packet, t, grid), com, which, packet.params)
