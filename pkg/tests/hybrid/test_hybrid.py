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

"""Hybrid propagation under the adiabatic and the Ehrenfest force law"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from hybrid_hydrogen import hybrid, softcore
from hybrid_hydrogen.core import PacketSpec, make_params
from hybrid_hydrogen.exceptions import RepresentationError, StepSizeError
from hybrid_hydrogen.math.grids import uniform_grid
from hybrid_hydrogen.reference import build_packet, kepler_period, relative_momentum
import tests


def _softcore_state(params, representation='grid', p_p0=0.0):
    basis = softcore.fourier_grid_eigenbasis(uniform_grid(16.0, 256), mass=params.m_e, count=2)
    return hybrid.init_softcore_hybrid(basis, [1.0, 1.0], r_p0=0.0, p_p0=p_p0, representation=representation)


@tests.register(name='test_hybrid')
class TestForceLaw(unittest.TestCase):

    def test_parse(self):
        self.assertIs(hybrid.ForceLaw.parse('adiabatic-gradient'), hybrid.ForceLaw.ADIABATIC)
        self.assertIs(hybrid.ForceLaw.parse('Ehrenfest'), hybrid.ForceLaw.EHRENFEST)
        self.assertIs(hybrid.ForceLaw.parse(hybrid.ForceLaw.EHRENFEST), hybrid.ForceLaw.EHRENFEST)
        with self.assertRaises(ValueError):
            hybrid.ForceLaw.parse('bohmian')

    def test_law_must_match_representation(self):
        params = make_params(10.0)
        grid_state = _softcore_state(params)
        adiabatic_state = _softcore_state(params, representation='adiabatic')
        with self.assertRaises(RepresentationError):
            hybrid.step(grid_state, 0.01, 'adiabatic', params)
        with self.assertRaises(RepresentationError):
            hybrid.step(adiabatic_state, 0.01, 'ehrenfest', params)
        with self.assertRaises(RepresentationError):
            hybrid.force_adiabatic(grid_state, params)
        with self.assertRaises(RepresentationError):
            _softcore_state(params, representation='bohmian')

    def test_step_guard(self):
        params = make_params(10.0)
        state = _softcore_state(params)
        guard = hybrid.STEP_GUARD * hybrid.electron_period(state)
        hybrid.step(state, guard, 'ehrenfest', params)
        for dt in (2.0 * guard, 0.0, -guard, float('nan')):
            with self.assertRaises(StepSizeError):
                hybrid.step(state, dt, 'ehrenfest', params)
        # explicit guard override
        hybrid.step(state, 2.0 * guard, 'ehrenfest', params, max_dt=4.0 * guard)


@tests.register(name='test_hybrid')
class TestAdiabaticCircular(unittest.TestCase):

    def setUp(self):
        self.params = make_params()
        self.spec = PacketSpec(n_bar=10, sigma_n=0.5)
        self.state = hybrid.init_hybrid(self.spec, np.zeros(3), np.zeros(3), self.params)
        self.period = kepler_period(10, self.params, mass=self.params.m_e)
        scenario = hybrid.HybridScenario(initial=self.state, params=self.params, law='adiabatic',
                                         dt=self.period / 1000.0, duration=3.0 * self.period, stride=20)
        self.record = hybrid.run_hybrid(scenario)

    def test_initial_state(self):
        self.assertEqual(self.state.representation, 'adiabatic')
        self.assertEqual(self.state.electron.mass, self.params.m_e)
        self.assertAlmostEqual(self.state.electron.norm(), 1.0, places=12)
        self.assertAlmostEqual(hybrid.electron_period(self.state), self.period, places=6)

    def test_adiabatic_force_vanishes(self):
        assert_allclose(hybrid.force_adiabatic(self.state, self.params), 0.0, atol=1e-12)

    def test_ehrenfest_force_points_at_electron(self):
        force = hybrid.force_ehrenfest(self.state, self.params)
        self.assertEqual(force.shape, (3,))
        self.assertGreater(force[0], 0.0)
        self.assertLess(abs(force[2]), 1e-6 * force[0])

    def test_proton_stays_put(self):
        record = self.record
        self.assertEqual(len(record), 151)
        record.validate()
        assert_allclose(record['r_p'], 0.0, atol=1e-12)
        assert_allclose(record['p_p'], 0.0, atol=1e-12)

    def test_populations_constant(self):
        populations = self.record['populations']
        assert_allclose(populations, populations[0][None, :], atol=1e-12)
        assert_allclose(self.record['norm'], 1.0, atol=1e-12)
        assert_allclose(self.record['H'], self.record['H'][0], rtol=1e-12)

    def test_total_momentum_follows_the_electron(self):
        P = self.record['P']
        excursion = np.max(np.linalg.norm(P, axis=1))
        self.assertGreaterEqual(excursion, 0.5 * self.params.mu / self.spec.n_bar)
        packet = build_packet(self.spec, self.params, mass=self.params.m_e)
        expected = relative_momentum(packet, self.record['t'])
        assert_allclose(P, expected, atol=1e-9)

    def test_metadata(self):
        meta = self.record.meta
        self.assertEqual(meta['force_law'], 'adiabatic')
        self.assertEqual(meta['potential'], 'coulomb')
        self.assertEqual(meta['population_offset'], self.spec.n_lo)
        with self.assertRaises(RepresentationError):
            hybrid.electron_density(self.state)


@tests.register(name='test_hybrid')
class TestEhrenfestSoftcore(unittest.TestCase):

    def setUp(self):
        self.params = make_params(10.0)
        self.state = _softcore_state(self.params)
        self.period = hybrid.electron_period(self.state)

    def _run(self, divisions, periods=1.0, stride=1):
        scenario = hybrid.HybridScenario(initial=self.state, params=self.params, law='ehrenfest',
                                         dt=self.period / divisions, duration=periods * self.period,
                                         stride=stride)
        return hybrid.run_hybrid(scenario)

    def test_initial_state(self):
        self.assertAlmostEqual(self.period, 15.9, delta=0.2)
        self.assertAlmostEqual(self.state.electron.norm(), 1.0, places=12)
        assert_allclose(hybrid.populations(self.state), [0.5, 0.5], atol=1e-10)

    def test_conservation(self):
        record = self._run(1024, periods=2.0, stride=16)
        P = record['P'][:, 0]
        self.assertLess(np.max(np.abs(P - P[0])), 1e-6)
        H = record['H']
        self.assertLess(np.max(np.abs(H - H[0])), 1e-3)
        assert_allclose(record['norm'], 1.0, atol=1e-10)
        # the proton is pulled along by the oscillating electron
        self.assertGreater(np.ptp(record['p_p'][:, 0]), 0.0)

    def test_long_run_conservation(self):
        params = make_params(100.0)
        state = _softcore_state(params)
        period = hybrid.electron_period(state)
        scenario = hybrid.HybridScenario(initial=state, params=params, law='ehrenfest', dt=period / 8192,
                                         duration=10.0 * period, stride=256)
        record = hybrid.run_hybrid(scenario)
        H = record['H']
        self.assertLess(np.max(np.abs(H - H[0])) / abs(H[0]), 1e-8)
        P = record['P'][:, 0]
        self.assertLess(np.max(np.abs(P - P[0])), 1e-6)

    def test_second_order(self):
        finals = [self._run(divisions, stride=divisions).final_state for divisions in (1024, 2048, 8192)]
        reference_psi = finals[2].electron.psi
        dx = finals[2].electron.spacing
        errors = [np.sqrt(np.sum(np.abs(state.electron.psi - reference_psi) ** 2) * dx) for state in finals[:2]]
        ratio = errors[0] / errors[1]
        self.assertGreaterEqual(ratio, 3.0)
        self.assertLessEqual(ratio, 5.0)

    def test_force_matches_across_representations(self):
        adiabatic_state = _softcore_state(self.params, representation='adiabatic')
        assert_allclose(hybrid.force_ehrenfest(adiabatic_state, self.params),
                        hybrid.force_ehrenfest(self.state, self.params), atol=1e-10)
        assert_allclose(hybrid.electron_density(adiabatic_state)[1], hybrid.electron_density(self.state)[1],
                        atol=1e-10)

    def test_keep_densities(self):
        scenario = hybrid.HybridScenario(initial=self.state, params=self.params, law='ehrenfest',
                                         dt=self.period / 1024, duration=0.25 * self.period, stride=64,
                                         keep_densities=True)
        record = hybrid.run_hybrid(scenario)
        self.assertEqual(len(record.densities), len(record))
        assert_allclose(record.density_grid, self.state.electron.x)
        self.assertTrue(record.meta['potential'].startswith('soft-core'))


@tests.register(name='test_hybrid')
class TestAdiabaticSoftcore(unittest.TestCase):

    def test_proton_drifts_freely(self):
        params = make_params(10.0)
        state = _softcore_state(params, representation='adiabatic', p_p0=0.5)
        period = hybrid.electron_period(state)
        scenario = hybrid.HybridScenario(initial=state, params=params, law='adiabatic', dt=period / 1000,
                                         duration=period, stride=100)
        record = hybrid.run_hybrid(scenario)
        assert_allclose(record['p_p'][:, 0], 0.5, atol=1e-12)
        assert_allclose(record['r_p'][:, 0], 0.5 / params.m_p * record['t'], rtol=1e-9, atol=1e-12)
        assert_allclose(record['populations'], 0.5, atol=1e-12)


def main():
    suite = unittest.TestSuite()
    for case in (TestForceLaw, TestAdiabaticCircular, TestEhrenfestSoftcore, TestAdiabaticSoftcore):
        suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(case))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
