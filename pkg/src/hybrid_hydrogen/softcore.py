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

"""One dimensional soft-core Coulomb problem.

V_s(x) = -1 / sqrt(x^2 + s^2) regularizes the Coulomb singularity. Bound states
are computed either by diagonalizing the Fourier grid Hamiltonian or by
imaginary-time relaxation with the split-operator scheme. Both operate on a
uniform periodic grid and use the same spectral kinetic operator as the real
time propagators, so eigenstates are consistent with the grid dynamics.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from hybrid_hydrogen.exceptions import ConvergenceError, GridError
from hybrid_hydrogen.math.grids import wavenumbers
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

DEFAULT_SOFTENING = 1.0


def potential(x, softening=DEFAULT_SOFTENING):
    """Soft-core Coulomb potential -1 / sqrt(x^2 + s^2) in hartree"""
    if softening <= 0:
        raise ValueError(f'softening must be positive, got {softening}')
    return -1.0 / np.sqrt(np.square(x) + softening ** 2)


def gradient(x, softening=DEFAULT_SOFTENING):
    """dV/dx = x / (x^2 + s^2)^(3/2)"""
    if softening <= 0:
        raise ValueError(f'softening must be positive, got {softening}')
    x = np.asarray(x, dtype=float)
    return x / (np.square(x) + softening ** 2) ** 1.5


@dataclass(frozen=True)
class EigenBasis:
    """Lowest bound states on a uniform grid.

    Attributes:
        x: grid coordinates (relative to the attracting center)
        energies: eigenvalues in ascending order
        states: real array (count, len(x)), normalized with sum |phi|^2 dx = 1
        mass: particle mass
        softening: softening length of the potential
    """
    x: np.ndarray
    energies: np.ndarray
    states: np.ndarray
    mass: float
    softening: float

    @property
    def spacing(self):
        return float(self.x[1] - self.x[0])

    @property
    def count(self):
        return len(self.energies)

    def period(self):
        """Oscillation period 2 pi / (E_1 - E_0) of the lowest two states"""
        if self.count < 2:
            raise ValueError('period requires at least two bound states')
        return 2.0 * np.pi / (self.energies[1] - self.energies[0])

    def superpose(self, coeffs):
        """Wave function sum_j c_j phi_j on the grid"""
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (self.count,):
            raise ValueError(f'expected {self.count} coefficients, got shape {coeffs.shape}')
        return coeffs @ self.states

    def project(self, psi):
        """Coefficients <phi_j|psi>"""
        return (self.states @ np.asarray(psi)) * self.spacing


def _check_grid(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) < 4:
        raise GridError('bound states need a one dimensional grid with at least four points')
    dx = np.diff(x)
    if not np.allclose(dx, dx[0], rtol=1e-10, atol=0.0):
        raise GridError('bound states need a uniform grid')
    return x, float(dx[0])


def _fix_signs(states, x):
    # even states positive in total, odd states rising to the right
    half_width = 0.5 * (x[-1] - x[0])
    overlap = states @ (1.0 + x / half_width)
    signs = np.where(overlap < 0.0, -1.0, 1.0)
    return states * signs[:, None]


def kinetic_matrix(x, mass):
    """Spectral kinetic energy operator on the periodic grid as a dense matrix"""
    x, dx = _check_grid(x)
    k = wavenumbers(len(x), dx)
    identity = np.eye(len(x))
    kinetic = np.fft.ifft((k ** 2 / (2.0 * mass))[:, None] * np.fft.fft(identity, axis=0), axis=0)
    kinetic = kinetic.real
    return 0.5 * (kinetic + kinetic.T)


def fourier_grid_eigenbasis(x, mass, softening=DEFAULT_SOFTENING, count=2):
    """Lowest eigenstates of the Fourier grid Hamiltonian T + V_s.

    Args:
        x: uniform grid
        mass(float): particle mass
        softening(float): softening length
        count(int): number of states

    Returns:
        EigenBasis
    """
    x, dx = _check_grid(x)
    if not 1 <= count <= len(x):
        raise ValueError(f'count must lie in [1, {len(x)}], got {count}')
    hamiltonian = kinetic_matrix(x, mass) + np.diag(potential(x, softening))
    energies, vectors = eigh(hamiltonian, subset_by_index=[0, count - 1])
    states = _fix_signs(vectors.T / np.sqrt(dx), x)
    logger.debug(f'Fourier grid eigenbasis on {len(x)} points, energies {energies}')
    return EigenBasis(x=x, energies=energies, states=states, mass=float(mass), softening=float(softening))


def _rayleigh(states, k, mass, v, dx):
    psi_k = np.fft.fft(states, axis=-1)
    kinetic = np.sum(k ** 2 / (2.0 * mass) * np.abs(psi_k) ** 2, axis=-1) / states.shape[-1]
    return (kinetic + np.sum(v * np.abs(states) ** 2, axis=-1)) * dx


def relax_bound_states(x, mass, softening=DEFAULT_SOFTENING, count=2, dtau=0.02, tolerance=1e-10,
                       max_steps=200000):
    """Lowest bound states by imaginary-time split-operator relaxation.

    Each step applies exp(-V dtau/2) exp(-T dtau) exp(-V dtau/2) to all trial
    states, orthonormalizes them in order (Gram-Schmidt via QR) and stops once
    every energy changes by less than tolerance per step.

    Args:
        x: uniform grid
        mass(float): particle mass
        softening(float): softening length
        count(int): number of states
        dtau(float): imaginary time step
        tolerance(float): energy change per step at convergence (hartree)
        max_steps(int): step limit

    Returns:
        EigenBasis

    Raises:
        ConvergenceError: tolerance not reached within max_steps
    """
    x, dx = _check_grid(x)
    if dtau <= 0:
        raise ValueError(f'dtau must be positive, got {dtau}')
    k = wavenumbers(len(x), dx)
    v = potential(x, softening)
    half_potential = np.exp(-0.5 * dtau * v)
    kinetic = np.exp(-dtau * k ** 2 / (2.0 * mass))

    # x^j times a wide Gaussian, parity matches the j-th state
    width = 0.125 * (x[-1] - x[0])
    states = np.array([(x / width) ** j * np.exp(-0.5 * (x / width) ** 2) for j in range(count)])
    energies = np.full(count, np.inf)

    for step in range(1, max_steps + 1):
        states = half_potential * np.fft.ifft(kinetic * np.fft.fft(half_potential * states, axis=-1), axis=-1).real
        q, r = np.linalg.qr(states.T)
        states = (q * np.sign(np.diag(r))).T / np.sqrt(dx)
        updated = _rayleigh(states, k, mass, v, dx)
        change = np.max(np.abs(updated - energies))
        energies = updated
        if change < tolerance:
            logger.debug(f'imaginary-time relaxation converged after {step} steps, energies {energies}')
            break
    else:
        raise ConvergenceError(f'imaginary-time relaxation did not converge within {max_steps} steps '
                               f'(last energy change {change:.3g})')

    order = np.argsort(energies)
    states = _fix_signs(states[order], x)
    return EigenBasis(x=x, energies=energies[order], states=states, mass=float(mass), softening=float(softening))


def eigenbasis(x, mass, softening=DEFAULT_SOFTENING, count=2, method='fgh', **kwargs):
    """Bound states with the selected method ('fgh' or 'imaginary-time')"""
    if method == 'fgh':
        return fourier_grid_eigenbasis(x, mass, softening, count)
    if method == 'imaginary-time':
        return relax_bound_states(x, mass, softening, count, **kwargs)
    raise ValueError(f'unknown bound state method "{method}"')


def translate(psi, spacing, shift):
    """Spectral translation psi(x - shift) of periodic grid samples"""
    k = wavenumbers(np.shape(psi)[-1], spacing, derivative=True)
    return np.fft.ifft(np.fft.fft(psi, axis=-1) * np.exp(-1j * k * shift), axis=-1)
