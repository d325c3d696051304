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

from numpy.testing import assert_array_equal

from hybrid_hydrogen.interfaces import ComparisonReport, InvariantCheck, RunManifest, TrajectoryRecord
import tests


def _append(record, t, populations=(0.5, 0.5), **extras):
    record.append(t=t, r_p=[0.1 * t], p_p=[0.0], r_e=[1.0], p_e=[0.2], P=[0.2], H=-0.5, norm=1.0,
                  populations=populations, **extras)


@tests.register(name='test_misc')
class TestTrajectoryRecord(unittest.TestCase):

    def test_series(self):
        record = TrajectoryRecord(dim=1, meta={'population_offset': 3})
        for t in (0.0, 0.5, 1.0):
            _append(record, t, purity=0.9)
        record.validate()
        self.assertEqual(len(record), 3)
        self.assertEqual(record['r_p'].shape, (3, 1))
        assert_array_equal(record['purity'], [0.9, 0.9, 0.9])
        names = [name for name, _, _ in record.columns()]
        self.assertEqual(names, ['t', 'r_p_x', 'p_p_x', 'r_e_x', 'p_e_x', 'P_x', 'H', 'norm', 'pop_3', 'pop_4',
                                 'purity'])
        with self.assertRaises(KeyError):
            record['velocity']

    def test_empty_vector_series(self):
        record = TrajectoryRecord(dim=3)
        self.assertEqual(record['r_e'].shape, (0, 3))

    def test_rejects_inconsistent_samples(self):
        record = TrajectoryRecord(dim=1)
        _append(record, 1.0)
        with self.assertRaises(ValueError):
            _append(record, 1.0)
        with self.assertRaises(ValueError):
            _append(record, 2.0, populations=(1.0,))
        with self.assertRaises(ValueError):
            _append(record, 2.0, purity=1.0)
        with self.assertRaises(ValueError):
            record.append(t=3.0, r_p=[0.0, 0.0], p_p=[0.0], r_e=[0.0], p_e=[0.0], P=[0.0], H=0.0, norm=1.0)
        with self.assertRaises(ValueError):
            TrajectoryRecord(dim=4)

    def test_state_dict(self):
        record = TrajectoryRecord(dim=1, meta={'kind': 'hybrid'})
        _append(record, 0.0)
        state = record.state_dict()
        self.assertEqual(state['series']['H'], [-0.5])
        self.assertEqual(record.state_dict(retain_keys=['meta.kind']), {'meta': {'kind': 'hybrid'}})


@tests.register(name='test_misc')
class TestManifest(unittest.TestCase):

    def test_invariant_checks(self):
        self.assertTrue(InvariantCheck('norm', 1e-13, 1e-12).passed)
        self.assertFalse(InvariantCheck('norm', 1e-11, 1e-12).passed)
        self.assertTrue(InvariantCheck('revival', 0.9, 0.5, comparison='>=').passed)
        self.assertFalse(InvariantCheck('order', 1.0, 2.0, passed=False).passed)

    def test_manifest(self):
        manifest = RunManifest(config={'experiment': {'kind': 'oracle'}}, version='1.0.0', unit_system={})
        self.assertTrue(manifest.passed)
        manifest.add_invariant(InvariantCheck('norm', 0.0, 1e-12))
        manifest.add_invariant(InvariantCheck('energy', 1.0, 1e-3))
        manifest.add_derived(steps=10)
        manifest.add_artifact('oracle.csv')
        self.assertFalse(manifest.passed)
        state = manifest.state_dict()
        self.assertEqual(state['derived'], {'steps': 10})
        self.assertEqual([c['name'] for c in state['invariants']], ['norm', 'energy'])
        self.assertFalse(state['complete'])
        self.assertIsNone(state['error'])

    def test_comparison_report(self):
        report = ComparisonReport(metrics={'ratio': 1.0}, rows=[{'aspect': 'proton dynamics', 'verdict': 'ok'}])
        self.assertEqual(report.row('proton dynamics')['verdict'], 'ok')
        with self.assertRaises(KeyError):
            report.row('electron dynamics')
        self.assertEqual(report.state_dict()['metrics'], {'ratio': 1.0})


def main():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestTrajectoryRecord))
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestManifest))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
