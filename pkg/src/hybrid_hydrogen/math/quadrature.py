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

"""Quadrature rules in spherical coordinates.

The radial rule is a generalized Gauss-Laguerre rule for the normalized weight
function s^alpha e^{-s} / Gamma(alpha + 1), with s = kappa * r. Amplitudes of
high Rydberg states are huge powers of r times tiny exponentials, so callers
pass logarithms of their integrands and the rule divides out the weight
function in log space (see SphericalQuadrature.log_weight_function).
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln, roots_legendre


def gauss_laguerre(n: int, alpha: float = 0.0):
    """Nodes and normalized weights of the generalized Gauss-Laguerre rule.

    Computed with the Golub-Welsch algorithm, weights are normalized to sum up
    to one so that large alpha does not overflow Gamma(alpha + 1).

    Args:
        n(int): number of nodes
        alpha(float): exponent of the weight function, > -1

    Returns:
        tuple (nodes, weights) of 1d arrays
    """
    if n < 1:
        raise ValueError(f'need at least one node, got {n}')
    if alpha <= -1:
        raise ValueError(f'alpha must be > -1, got {alpha}')
    k = np.arange(n, dtype=float)
    diagonal = 2.0 * k + alpha + 1.0
    offdiagonal = np.sqrt(k[1:] * (k[1:] + alpha))
    nodes, vectors = eigh_tridiagonal(diagonal, offdiagonal)
    weights = vectors[0, :] ** 2
    return nodes, weights / weights.sum()


@dataclass(frozen=True)
class SphericalQuadrature:
    """Tensor product rule over (r, theta, phi).

    Attributes:
        s, w_s: generalized Gauss-Laguerre nodes and normalized weights
        alpha, kappa: weight function parameters, r = s / kappa
        cos_theta, w_theta: Gauss-Legendre nodes and weights in cos(theta)
        phi, w_phi: uniform azimuthal nodes and weights
    """
    s: np.ndarray
    w_s: np.ndarray
    alpha: float
    kappa: float
    cos_theta: np.ndarray
    w_theta: np.ndarray
    phi: np.ndarray
    w_phi: np.ndarray

    @property
    def r(self):
        return self.s / self.kappa

    @property
    def theta(self):
        return np.arccos(self.cos_theta)

    def mesh(self):
        """Broadcastable (r, theta, phi) arrays of shape (Nr,1,1), (1,Nt,1), (1,1,Np)"""
        return (self.r[:, None, None], self.theta[None, :, None], self.phi[None, None, :])

    def log_weight_function(self, r):
        """Logarithm of s^alpha e^{-s} / Gamma(alpha + 1) at radius r"""
        s = self.kappa * np.asarray(r, dtype=float)
        with np.errstate(divide='ignore'):
            return self.alpha * np.log(s) - s - gammaln(self.alpha + 1.0)

    def integrate(self, values):
        """Integrate values sampled on mesh() after division by the radial weight function.

        Args:
            values: array (Nr, Nt, Np, ...) holding f(r, theta, phi) / weight_function(r).
                The volume element r^2 is NOT included, multiply it in if required.

        Returns:
            approximation to the integral of f dr dOmega
        """
        values = np.asarray(values)
        w = (self.w_s / self.kappa)[:, None, None] * self.w_theta[None, :, None] * self.w_phi[None, None, :]
        return np.tensordot(w, values, axes=3)


def spherical_quadrature(n_r: int, n_theta: int, n_phi: int, alpha: float = 0.0, kappa: float = 1.0):
    """Build a SphericalQuadrature.

    Args:
        n_r(int): radial nodes
        n_theta(int): polar nodes (Gauss-Legendre in cos(theta))
        n_phi(int): azimuthal nodes (uniform, exact for trigonometric polynomials of degree < n_phi)
        alpha(float): radial weight exponent
        kappa(float): radial scale, s = kappa * r

    Returns:
        SphericalQuadrature
    """
    if kappa <= 0:
        raise ValueError(f'kappa must be positive, got {kappa}')
    s, w_s = gauss_laguerre(n_r, alpha)
    cos_theta, w_theta = roots_legendre(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    w_phi = np.full(n_phi, 2.0 * np.pi / n_phi)
    return SphericalQuadrature(s=s, w_s=w_s, alpha=float(alpha), kappa=float(kappa),
                               cos_theta=cos_theta, w_theta=w_theta, phi=phi, w_phi=w_phi)
