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

import math
import unittest

from hybrid_hydrogen.core import PROTON_ELECTRON_MASS_RATIO, PacketSpec, default_window, make_params
from hybrid_hydrogen.exceptions import PacketRepresentationError
import tests


@tests.register(name='test_core')
class TestAtomParams(unittest.TestCase):

    def test_physical_masses(self):
        params = make_params()
        self.assertEqual(params.m_e, 1.0)
        self.assertEqual(params.m_p, PROTON_ELECTRON_MASS_RATIO)
        self.assertAlmostEqual(params.M, 1837.15267343, places=10)
        self.assertAlmostEqual(params.mu, params.m_e * params.m_p / params.M, places=15)
        self.assertLess(params.mu, params.m_e)
        self.assertAlmostEqual(params.mass_ratio, PROTON_ELECTRON_MASS_RATIO, places=9)

    def test_toy_ratio(self):
        params = make_params(100.0)
        self.assertEqual(params.M, 101.0)
        self.assertAlmostEqual(params.mu, 100.0 / 101.0, places=15)

    def test_invalid_ratio(self):
        for ratio in (0.0, -1.0, float('inf'), float('nan'), 'abc'):
            with self.assertRaises(ValueError):
                make_params(ratio)

    def test_state_dict(self):
        data = make_params(10.0).state_dict()
        self.assertEqual(sorted(data), ['M', 'a_B', 'hbar', 'm_e', 'm_p', 'mu'])
        self.assertEqual(data['hbar'], 1.0)


@tests.register(name='test_core')
class TestPacketSpec(unittest.TestCase):

    def test_default_window(self):
        self.assertEqual(default_window(60, 0.8), (54, 66))
        self.assertEqual(default_window(3, 1.0), (1, 11))
        spec = PacketSpec()
        self.assertEqual(spec.window, (54, 66))
        self.assertEqual((spec.n_lo, spec.n_hi), (54, 66))

    def test_explicit_window(self):
        spec = PacketSpec(n_bar=20, sigma_n=1.0, window=(10, 30))
        self.assertEqual(spec.window, (10, 30))
        self.assertEqual(spec.state_dict()['window'], [10, 30])

    def test_invalid(self):
        with self.assertRaises(PacketRepresentationError):
            PacketSpec(sigma_n=0.0)
        with self.assertRaises(PacketRepresentationError):
            PacketSpec(sigma_com=-1.0)
        with self.assertRaises(PacketRepresentationError):
            PacketSpec(n_bar=0.5)
        with self.assertRaises(PacketRepresentationError):
            PacketSpec(n_bar=60, window=(70, 80))
        with self.assertRaises(PacketRepresentationError):
            PacketSpec(n_bar=60, window=(0, 80))
        # PacketRepresentationError is a ValueError
        with self.assertRaises(ValueError):
            PacketSpec(sigma_n=math.nan)


def main():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestAtomParams))
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestPacketSpec))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
