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

"""Hydrogen bound states.

Energies, circular-state amplitudes (l = m = n - 1), general eigenfunctions
u_nlm and dipole matrix elements between neighbouring circular states.

All functions take an optional `mass` which defaults to the reduced mass of the
given AtomParams. The length scale of the Coulomb problem then is the scaled
Bohr radius a_B * m_e / mass, energies scale linearly with mass. The hybrid
electron uses mass = m_e.

Phase convention: all amplitudes are real and positive at phi = 0 in the
equatorial plane, i.e. spherical harmonics are used without the Condon-Shortley
phase. Then every circular dipole element is real and positive.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre, gammaln, lpmv, xlogy

from hybrid_hydrogen.core import AtomParams
from hybrid_hydrogen.exceptions import QuantumNumberError, RangeError
from hybrid_hydrogen.math.quadrature import spherical_quadrature

# largest principal quantum number supported by the log-space evaluators
MAX_N = 200
# evaluation radius limit in units of n^2 times the scaled Bohr radius
MAX_RADIUS_FACTOR = 10.0


@dataclass(frozen=True)
class CircularStateIndex:
    """Circular state |n, l=n-1, m=n-1>"""
    n: int

    def __post_init__(self):
        _check_n(self.n)

    @property
    def l(self):  # noqa: E743
        return self.n - 1

    @property
    def m(self):
        return self.n - 1


@dataclass(frozen=True)
class DipoleElement:
    """<n| x |n+1> between circular states, in bohr"""
    n: int
    value: float


def _check_n(n):
    if int(n) != n or n < 1:
        raise QuantumNumberError(f'principal quantum number must be an integer >= 1, got {n}')


def _as_n(idx):
    n = idx.n if isinstance(idx, CircularStateIndex) else idx
    _check_n(n)
    return int(n)


def _mass(params: AtomParams, mass):
    return params.mu if mass is None else float(mass)


def _split_point(point):
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != 3:
        raise ValueError(f'expected spherical coordinates (r, theta, phi) in the last axis, got shape {point.shape}')
    r, theta, phi = point[..., 0], point[..., 1], point[..., 2]
    if np.any(r < 0):
        raise ValueError('radius must be non-negative')
    return r, theta, phi


def bohr_radius(params: AtomParams, mass=None):
    """Length scale a_B * m_e / mass of the Coulomb problem with the given mass"""
    return params.a_B * params.m_e / _mass(params, mass)


def bohr_energy(n, params: AtomParams, mass=None):
    """Bound-state energy -mass / (2 n^2) in hartree.

    Args:
        n: principal quantum number(s), integer >= 1. Arrays are supported.
        params(AtomParams): atom parameters
        mass(float): particle mass, defaults to the reduced mass

    Returns:
        energy (float or array)
    """
    n_arr = np.asarray(n)
    if np.any(n_arr < 1) or np.any(np.asarray(n_arr, dtype=float) != np.round(n_arr)):
        raise QuantumNumberError(f'principal quantum number must be an integer >= 1, got {n}')
    energy = -0.5 * (_mass(params, mass) / params.m_e) / n_arr.astype(float) ** 2
    return float(energy) if energy.ndim == 0 else energy


def _check_range(n, r, a):
    if n > MAX_N:
        raise RangeError(f'n={n} exceeds the supported maximum {MAX_N}')
    if np.any(r > MAX_RADIUS_FACTOR * n * n * a):
        raise RangeError(f'radius beyond {MAX_RADIUS_FACTOR} n^2 a for n={n}')


def _log_circular_norm(n, a):
    # log of the amplitude prefactor in front of r^(n-1) sin^(n-1)(theta)
    l = n - 1  # noqa: E741
    radial = (n + 0.5) * np.log(2.0 / (n * a)) - 0.5 * gammaln(2 * n + 1)
    angular = 0.5 * gammaln(2 * l + 2) - 0.5 * np.log(4.0 * np.pi) - l * np.log(2.0) - gammaln(l + 1)
    return radial + angular


def log_circular_amplitude(n, r, theta, params: AtomParams, mass=None, check_range=True):
    """Logarithm of the modulus of a circular-state amplitude.

    Args:
        n(int): principal quantum number
        r, theta: spherical coordinates (arrays broadcast against each other)
        params(AtomParams): atom parameters
        mass(float): particle mass, defaults to the reduced mass
        check_range(bool): reject n > 200 and r > 10 n^2 a. The log itself never
            overflows, grid samplers switch the check off.

    Returns:
        log|u_n(r, theta)|, -inf on nodes
    """
    n = _as_n(n)
    a = bohr_radius(params, mass)
    r = np.asarray(r, dtype=float)
    if check_range:
        _check_range(n, r, a)
    l = n - 1  # noqa: E741
    with np.errstate(divide='ignore'):
        return (_log_circular_norm(n, a) + xlogy(l, r) - r / (n * a)
                + xlogy(l, np.abs(np.sin(theta))))


def eval_circular(idx, point, params: AtomParams, mass=None):
    """Evaluate the circular state u_{n,n-1,n-1} at spherical coordinates.

    Args:
        idx(CircularStateIndex or int): principal quantum number
        point: array-like (..., 3) of (r, theta, phi)
        params(AtomParams): atom parameters
        mass(float): particle mass, defaults to the reduced mass

    Returns:
        complex amplitude(s)

    Raises:
        RangeError: n > 200 or r > 10 n^2 a
    """
    n = _as_n(idx)
    r, theta, phi = _split_point(point)
    log_amp = log_circular_amplitude(n, r, theta, params, mass)
    return np.exp(log_amp) * np.exp(1j * (n - 1) * phi)


def _check_nlm(n, l, m):  # noqa: E741
    _check_n(n)
    if int(l) != l or int(m) != m:
        raise QuantumNumberError(f'quantum numbers must be integers, got l={l}, m={m}')
    if not 0 <= l <= n - 1:
        raise QuantumNumberError(f'l must satisfy 0 <= l <= n-1, got n={n}, l={l}')
    if abs(m) > l:
        raise QuantumNumberError(f'm must satisfy |m| <= l, got l={l}, m={m}')


def spherical_harmonic(l, m, theta, phi):  # noqa: E741
    """Orthonormal spherical harmonic without Condon-Shortley phase.

    Y_{l,-m} is the complex conjugate of Y_{l,m}.
    """
    am = abs(m)
    log_norm = 0.5 * (np.log(2 * l + 1) - np.log(4.0 * np.pi) + gammaln(l - am + 1) - gammaln(l + am + 1))
    legendre = (-1.0) ** am * lpmv(am, l, np.cos(theta))
    return np.exp(log_norm) * legendre * np.exp(1j * m * np.asarray(phi))


def radial_function(n, l, r, params: AtomParams, mass=None, check_range=True):  # noqa: E741
    """Normalized radial function R_nl(r) with int R^2 r^2 dr = 1"""
    a = bohr_radius(params, mass)
    r = np.asarray(r, dtype=float)
    if check_range:
        _check_range(n, r, a)
    rho = 2.0 * r / (n * a)
    laguerre = eval_genlaguerre(n - l - 1, 2 * l + 1, rho)
    log_pref = 1.5 * np.log(2.0 / (n * a)) + 0.5 * (gammaln(n - l) - np.log(2.0 * n) - gammaln(n + l + 1))
    with np.errstate(divide='ignore'):
        log_abs = log_pref + xlogy(l, rho) - 0.5 * rho + np.log(np.abs(laguerre))
    return np.sign(laguerre) * np.exp(log_abs)


def eval_u_nlm(n, l, m, point, params: AtomParams, mass=None, check_range=True):  # noqa: E741
    """Evaluate the hydrogen eigenfunction u_nlm at spherical coordinates.

    Args:
        n, l, m(int): quantum numbers with n >= 1, 0 <= l < n, |m| <= l
        point: array-like (..., 3) of (r, theta, phi)
        params(AtomParams): atom parameters
        mass(float): particle mass, defaults to the reduced mass
        check_range(bool): reject radii beyond MAX_RADIUS_FACTOR n^2 a

    Returns:
        complex amplitude(s)
    """
    _check_nlm(n, l, m)
    r, theta, phi = _split_point(point)
    radial = radial_function(int(n), int(l), r, params, mass, check_range)
    return radial * spherical_harmonic(int(l), int(m), theta, phi)


def log_circular_dipole(n, params: AtomParams, mass=None):
    """Logarithm of the circular dipole element, see circular_dipole"""
    n = _as_n(n)
    a = bohr_radius(params, mass)
    kappa = 1.0 / (n * a) + 1.0 / ((n + 1) * a)
    radial = gammaln(2 * n + 3) - (2 * n + 3) * np.log(kappa)
    polar = (2 * n + 1) * np.log(2.0) + 2.0 * gammaln(n + 1) - gammaln(2 * n + 2)
    azimuthal = np.log(2.0 * np.pi)
    return (np.log(0.5) + _log_circular_norm(n, a) + _log_circular_norm(n + 1, a)
            + radial + polar + azimuthal)


def circular_dipole(n, params: AtomParams, mass=None) -> DipoleElement:
    """Matrix element <n| x |n+1> between neighbouring circular states.

    Only x - iy connects |n> to |n+1>, so <n|x|n+1> = <n|x - iy|n+1> / 2 and
    <n|y|n+1> = i <n|x|n+1>. The value follows from Gamma-function closed forms
    of the radial and polar overlap integrals.

    Args:
        n(int): lower principal quantum number
        params(AtomParams): atom parameters
        mass(float): particle mass, defaults to the reduced mass

    Returns:
        DipoleElement with real positive value in bohr
    """
    n = _as_n(n)
    return DipoleElement(n=n, value=float(np.exp(log_circular_dipole(n, params, mass))))


def circular_dipoles(n_values, params: AtomParams, mass=None):
    """Array of circular dipole values for consecutive n (all but the last element of n_values)"""
    n_values = np.asarray(n_values, dtype=int)
    return np.array([circular_dipole(n, params, mass).value for n in n_values[:-1]])


def circular_quadrature(n_lo, n_hi, params: AtomParams, mass=None, n_r=None, n_theta=None, n_phi=None):
    """Spherical quadrature for products of circular states n_lo..n_hi.

    The radial weight s^alpha e^{-s} with alpha = 2 (n_lo - 1) and s = 2 r / (n_hi a)
    leaves a polynomial times a decaying exponential for every density term. The
    default node counts integrate the angular dependence of densities and of the
    dipole-type integrands exactly.
    """
    n_lo, n_hi = _as_n(n_lo), _as_n(n_hi)
    if n_hi < n_lo:
        raise QuantumNumberError(f'empty range n={n_lo}..{n_hi}')
    spread = n_hi - n_lo
    return spherical_quadrature(n_r or 2 * spread + 64, n_theta or n_hi + 8, n_phi or 2 * spread + 8,
                                alpha=2.0 * (n_lo - 1), kappa=2.0 / (n_hi * bohr_radius(params, mass)))


def circular_superposition_on(quad, n_values, coeffs, params: AtomParams, mass=None):
    """sum_n c_n u_n on quad.mesh(), divided by the square root of the radial weight function.

    The squared modulus of the result is the density divided by the weight
    function, ready for SphericalQuadrature.integrate.
    """
    r, theta, phi = quad.mesh()
    half_log_weight = 0.5 * quad.log_weight_function(r)
    values = np.zeros(np.broadcast(r, theta, phi).shape, dtype=complex)
    for n, c in zip(np.asarray(n_values, dtype=int), np.asarray(coeffs, dtype=complex)):
        log_amp = log_circular_amplitude(int(n), r, theta, params, mass, check_range=False)
        values += c * np.exp(log_amp - half_log_weight) * np.exp(1j * (int(n) - 1) * phi)
    return values
