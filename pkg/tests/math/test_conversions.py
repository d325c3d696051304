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


import unittest
from hybrid_hydrogen.math import conversions
import tests


@tests.register(name='test_math')
class TestConversions(unittest.TestCase):

    def test_atomic_to_si(self):
        """1 bohr, 1 hartree and the atomic unit of time in SI"""
        self.assertAlmostEqual(conversions.au_to_m(1.0) / 5.29177210903e-11, 1.0, places=8)
        self.assertAlmostEqual(conversions.hartree_to_ev(1.0) / 27.211386245988, 1.0, places=8)
        self.assertAlmostEqual(conversions.au_to_s(1.0) / 2.4188843265857e-17, 1.0, places=8)
        self.assertAlmostEqual(conversions.hartree_to_j(1.0) / 4.3597447222071e-18, 1.0, places=8)

    def test_round_trip(self):
        for value in (1e-3, 1.0, 3600.0, 1e7):
            self.assertAlmostEqual(conversions.m_to_au(conversions.au_to_m(value)) / value, 1.0, places=14)
            self.assertAlmostEqual(conversions.s_to_au(conversions.au_to_s(value)) / value, 1.0, places=14)
            self.assertAlmostEqual(conversions.j_to_hartree(conversions.hartree_to_j(value)) / value, 1.0,
                                   places=14)

    def test_none_passes_through(self):
        self.assertIsNone(conversions.au_to_m(None))
        self.assertIsNone(conversions.au_to_kg_m_per_s(None))

    def test_unit_system(self):
        units = conversions.unit_system()
        self.assertEqual(units['length']['unit'], 'bohr')
        self.assertEqual(units['energy']['unit'], 'hartree')
        self.assertEqual(units['length']['si'], conversions.BOHR_RADIUS)


def main():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestConversions))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
