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

import os
import tempfile
import unittest

import numpy as np

from hybrid_hydrogen.interfaces import TrajectoryRecord
from hybrid_hydrogen.math.grids import PlanarDensity
from hybrid_hydrogen.utils import plotting
import tests


@tests.register(name='test_utils')
class TestPlotting(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def _path(self, name):
        return os.path.join(self.tmpdir.name, name)

    def test_time_series(self):
        t = np.linspace(0.0, 1.0, 11)
        filename = plotting.plot_time_series(self._path('series.svg'), t, {'a': t, 'b': t ** 2}, title='test')
        self.assertTrue(os.path.getsize(filename) > 0)

    def test_invalid_input(self):
        t = np.linspace(0.0, 1.0, 11)
        with self.assertRaises(ValueError):
            plotting.plot_time_series(self._path('series.png'), t, {'a': t})
        with self.assertRaises(ValueError):
            plotting.plot_time_series(self._path('series.svg'), t, {'a': t[:-1]})
        with self.assertRaises(ValueError):
            plotting.plot_time_series(self._path('series.svg'), [], {'a': []})
        with self.assertRaises(ValueError):
            plotting.plot_heatmaps(self._path('maps.svg'), [])

    def test_heatmaps(self):
        x = np.linspace(-2.0, 2.0, 16)
        X, Y = np.meshgrid(x, x, indexing='ij')
        density = PlanarDensity(np.exp(-X ** 2 - Y ** 2), x, x)
        filename = plotting.plot_heatmaps(self._path('maps.pdf'), [density, density], ['left', 'right'])
        with open(filename, 'rb') as f:
            self.assertEqual(f.read(4), b'%PDF')

    def test_trajectory(self):
        record = TrajectoryRecord(dim=1)
        for t in (0.0, 1.0, 2.0):
            record.append(t=t, r_p=[0.0], p_p=[0.0], r_e=[1.0 + t], p_e=[0.1], P=[0.1], H=-0.5, norm=1.0,
                          populations=(0.5, 0.5))
        files = plotting.plot_trajectory(record, self.tmpdir.name, prefix='hybrid_')
        self.assertEqual([os.path.basename(f) for f in files],
                         ['hybrid_separation.svg', 'hybrid_total_momentum.svg', 'hybrid_proton.svg',
                          'hybrid_populations.svg'])
        with self.assertRaises(ValueError):
            plotting.plot_trajectory(TrajectoryRecord(dim=1), self.tmpdir.name)


def main():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestPlotting))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
