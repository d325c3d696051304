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

"""Hydrogen energies, eigenfunctions and circular dipole elements"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from hybrid_hydrogen import basis
from hybrid_hydrogen.core import make_params
from hybrid_hydrogen.exceptions import QuantumNumberError, RangeError
from hybrid_hydrogen.math.quadrature import spherical_quadrature
import tests


def _norm(n, params, mass=None):
    quad = basis.circular_quadrature(n, n, params, mass)
    values = basis.circular_superposition_on(quad, [n], [1.0], params, mass)
    r, _, _ = quad.mesh()
    return float(quad.integrate(np.abs(values) ** 2 * r ** 2))


def _angular_states(n):
    # all l, with m at both ends and in the middle of each l shell
    return [(ell, m) for ell in range(n) for m in sorted({-ell, 0, ell})]


@tests.register(name='test_basis')
class TestEnergies(unittest.TestCase):

    def setUp(self):
        self.params = make_params()

    def test_bohr_energy(self):
        self.assertAlmostEqual(basis.bohr_energy(1, self.params, mass=1.0), -0.5, places=15)
        self.assertAlmostEqual(basis.bohr_energy(2, self.params), -0.125 * self.params.mu, places=15)
        energies = basis.bohr_energy(np.arange(1, 4), self.params, mass=1.0)
        assert_allclose(energies, [-0.5, -0.125, -0.5 / 9.0])

    def test_invalid_n(self):
        for n in (0, -3, 2.5):
            with self.assertRaises(QuantumNumberError):
                basis.bohr_energy(n, self.params)
        with self.assertRaises(QuantumNumberError):
            basis.CircularStateIndex(0)

    def test_bohr_radius(self):
        self.assertEqual(basis.bohr_radius(self.params, mass=1.0), 1.0)
        self.assertAlmostEqual(basis.bohr_radius(self.params), 1.0 / self.params.mu, places=14)


@tests.register(name='test_basis')
class TestEigenfunctions(unittest.TestCase):

    def setUp(self):
        self.params = make_params()

    def test_ground_state(self):
        points = np.array([[0.0, 0.3, 0.0], [1.0, 1.0, 2.0], [2.5, 2.0, -1.0]])
        expected = np.exp(-points[:, 0]) / np.sqrt(np.pi)
        assert_allclose(basis.eval_circular(1, points, self.params, mass=1.0), expected, rtol=1e-13)
        assert_allclose(basis.eval_u_nlm(1, 0, 0, points, self.params, mass=1.0), expected, rtol=1e-13)

    def test_circular_matches_general_eigenfunction(self):
        rng = np.random.default_rng(0)
        points = np.stack([rng.uniform(0.1, 30.0, 20), rng.uniform(0.0, np.pi, 20),
                           rng.uniform(-np.pi, np.pi, 20)], axis=-1)
        for n in (2, 3, 5):
            idx = basis.CircularStateIndex(n)
            self.assertEqual((idx.l, idx.m), (n - 1, n - 1))
            circular = basis.eval_circular(idx, points, self.params, mass=1.0)
            general = basis.eval_u_nlm(n, n - 1, n - 1, points, self.params, mass=1.0)
            assert_allclose(circular, general, rtol=1e-10, atol=1e-14)

    def test_positive_phase_convention(self):
        value = basis.eval_circular(4, [16.0, 0.5 * np.pi, 0.0], self.params, mass=1.0)
        self.assertGreater(value.real, 0.0)
        self.assertAlmostEqual(value.imag, 0.0, places=15)

    def test_normalization(self):
        for n in (1, 5, 60):
            self.assertAlmostEqual(_norm(n, self.params), 1.0, places=10)

    def test_invalid_quantum_numbers(self):
        with self.assertRaises(QuantumNumberError):
            basis.eval_u_nlm(2, 2, 0, [1.0, 1.0, 0.0], self.params)
        with self.assertRaises(QuantumNumberError):
            basis.eval_u_nlm(3, 1, 2, [1.0, 1.0, 0.0], self.params)
        with self.assertRaises(ValueError):
            basis.eval_circular(2, [-1.0, 1.0, 0.0], self.params)

    def test_range_limits(self):
        with self.assertRaises(RangeError):
            basis.eval_circular(201, [1.0, 1.0, 0.0], self.params)
        with self.assertRaises(RangeError):
            basis.eval_circular(2, [41.0, 1.0, 0.0], self.params, mass=1.0)
        # large n stays finite in log space
        value = basis.eval_circular(200, [40000.0, 0.5 * np.pi, 0.0], self.params, mass=1.0)
        self.assertTrue(np.isfinite(value))

    def test_circular_radial_peak(self):
        # r^2 |u_n|^2 ~ r^(2n) exp(-2 r / (n a)) peaks on the Bohr orbit n^2 a
        a = basis.bohr_radius(self.params)
        for n in (2, 5, 12, 60):
            r = n * n * a * np.linspace(0.5, 1.5, 20001)
            points = np.stack([r, np.full_like(r, 0.5 * np.pi), np.zeros_like(r)], axis=-1)
            radial = r ** 2 * np.abs(basis.eval_circular(n, points, self.params)) ** 2
            self.assertLessEqual(abs(r[np.argmax(radial)] - n * n * a), 1.5 * (r[1] - r[0]), n)

    def test_orthonormality(self):
        # the radial rule with kappa = 1/n + 1/n' integrates every product exactly
        for n in range(1, 13):
            for k in range(n, 13):
                quad = spherical_quadrature(16, 24, 32, kappa=1.0 / n + 1.0 / k)
                r, theta, phi = quad.mesh()
                points = np.stack(np.broadcast_arrays(r, theta, phi), axis=-1)
                measure = r ** 2 * np.exp(-quad.log_weight_function(r))
                lower = [basis.eval_u_nlm(n, ell, m, points, self.params, mass=1.0, check_range=False)
                         for ell, m in _angular_states(n)]
                upper = [basis.eval_u_nlm(k, ell, m, points, self.params, mass=1.0, check_range=False)
                         for ell, m in _angular_states(k)]
                overlaps = np.array([[complex(quad.integrate(np.conj(u) * v * measure)) for v in upper]
                                     for u in lower])
                expected = np.eye(len(lower)) if n == k else np.zeros((len(lower), len(upper)))
                assert_allclose(overlaps, expected, atol=1e-10, err_msg=f'n={n}, n\'={k}')


@tests.register(name='test_basis')
class TestDipoles(unittest.TestCase):

    def setUp(self):
        self.params = make_params()

    def test_lowest_dipole(self):
        # <1s| x |2p, m=+1> = 128 / 243 without Condon-Shortley phase
        element = basis.circular_dipole(1, self.params, mass=1.0)
        self.assertEqual(element.n, 1)
        self.assertAlmostEqual(element.value, 128.0 / 243.0, places=12)

    def test_dipole_against_quadrature(self):
        n = 10
        quad = basis.circular_quadrature(n, n + 1, self.params)
        lower = basis.circular_superposition_on(quad, [n], [1.0], self.params)
        upper = basis.circular_superposition_on(quad, [n + 1], [1.0], self.params)
        r, theta, phi = quad.mesh()
        integrand = np.conj(lower) * upper * r * np.sin(theta) * np.cos(phi) * r ** 2
        numeric = complex(quad.integrate(integrand))
        self.assertAlmostEqual(numeric.imag, 0.0, places=8)
        assert_allclose(numeric.real, basis.circular_dipole(n, self.params).value, rtol=1e-8)

    def test_large_n_scaling(self):
        # approaches half the orbit radius n^2 a for large n
        a = basis.bohr_radius(self.params)
        values = basis.circular_dipoles(np.arange(59, 63), self.params)
        self.assertEqual(len(values), 3)
        ratio = values[1] / (0.5 * 60 ** 2 * a)
        self.assertGreater(ratio, 0.9)
        self.assertLess(ratio, 1.1)


def main():
    suite = unittest.TestSuite()
    for case in (TestEnergies, TestEigenfunctions, TestDipoles):
        suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(case))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
