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

from hybrid_hydrogen.datastructures import Configuration, dict_get_nested, dict_put_nested, strbool
from hybrid_hydrogen.exceptions import ConfigParseError, ConfigValidationError
import tests


def _config():
    config = Configuration()
    config.add_param('packet.n_bar', 60.0, 'Mean principal quantum number')
    config.add_param('packet.window.n_lo', 0, 'Lowest n')
    config.add_param('hybrid.r_p0', [0.0, 0.0, 0.0], 'Initial proton position')
    config.add_param('output.plots', True, 'Write plots')
    config.add_param('output.plot_format', 'svg', 'Plot format')
    return config


@tests.register(name='test_misc')
class TestConfiguration(unittest.TestCase):

    def test_defaults_and_access(self):
        config = _config()
        self.assertEqual(config.packet.n_bar, 60.0)
        self.assertEqual(config['packet.window.n_lo'], 0)
        self.assertEqual(config.packet.window.prefix, 'packet.window')
        self.assertIn('hybrid.r_p0', config)
        self.assertNotIn('hybrid.r_e0', config)
        self.assertEqual(sorted(config.known_keys()), ['hybrid.r_p0', 'output.plot_format', 'output.plots',
                                                       'packet.n_bar', 'packet.window.n_lo'])

    def test_coercion(self):
        config = _config()
        config.parse_dict({'packet': {'n_bar': 30, 'window': {'n_lo': 25.0}}, 'hybrid': {'r_p0': [1, 2, 3]},
                           'output': {'plots': 'false'}})
        self.assertIsInstance(config.packet.n_bar, float)
        self.assertEqual(config.packet.window.n_lo, 25)
        self.assertEqual(config.hybrid.r_p0, [1.0, 2.0, 3.0])
        self.assertFalse(config.output.plots)

    def test_invalid_values_name_the_field(self):
        for data, field in (({'packet': {'window': {'n_lo': 2.5}}}, 'packet.window.n_lo'),
                            ({'packet': {'n_bar': True}}, 'packet.n_bar'),
                            ({'output': {'plot_format': 3}}, 'output.plot_format'),
                            ({'hybrid': {'r_p0': 1.0}}, 'hybrid.r_p0')):
            with self.assertRaises(ConfigValidationError) as ctx:
                _config().parse_dict(data)
            self.assertEqual(ctx.exception.field, field)

    def test_unknown_keys_rejected(self):
        with self.assertRaises(ConfigParseError):
            _config().parse_dict({'packet': {'n_bra': 30}})
        with self.assertRaises(ConfigParseError):
            _config().parse_dict({'packet': 30})
        # non-strict parsing keeps unknown keys
        config = _config().parse_dict({'packet': {'extra': 1}}, strict=False)
        self.assertEqual(config.packet.extra, 1)

    def test_overrides(self):
        config = _config().parse_overrides(['packet.n_bar=40', 'hybrid.r_p0=[0, 1, 0]', 'output.plots=false',
                                            'output.plot_format=pdf'])
        self.assertEqual(config.packet.n_bar, 40.0)
        self.assertEqual(config.hybrid.r_p0, [0.0, 1.0, 0.0])
        self.assertFalse(config.output.plots)
        self.assertEqual(config.output.plot_format, 'pdf')
        with self.assertRaises(ConfigParseError):
            _config().parse_overrides(['packet.n_bar'])
        with self.assertRaises(ConfigParseError):
            _config().parse_overrides(['packet.sigma=1'])

    def test_argparser(self):
        config = _config()
        rest = config.parse_args(['--packet.n_bar', '12', '--verbose'])
        self.assertEqual(config.packet.n_bar, 12.0)
        self.assertEqual(rest, ['--verbose'])

    def test_dict_round_trip(self):
        config = _config().parse_overrides(['packet.n_bar=42'])
        again = _config().parse_dict(config.to_dict())
        self.assertEqual(config, again)
        self.assertIn('"n_bar": 42.0', config.to_json())

    def test_right_merge(self):
        left = _config()
        right = Configuration()
        right.add_param('packet.n_bar', 20.0, 'Mean principal quantum number')
        right.add_param('oracle.points', 128, 'Grid points')
        left.right_merge(right)
        self.assertEqual(left.packet.n_bar, 20.0)
        self.assertEqual(left.oracle.points, 128)
        self.assertEqual(left.oracle.prefix, 'oracle')


@tests.register(name='test_misc')
class TestNestedHelpers(unittest.TestCase):

    def test_nested_dicts(self):
        d = {}
        dict_put_nested(d, 'a.b.c', 1)
        self.assertEqual(d, {'a': {'b': {'c': 1}}})
        self.assertEqual(dict_get_nested(d, 'a.b.c'), 1)
        with self.assertRaises(KeyError):
            dict_get_nested(d, 'a.x')

    def test_strbool(self):
        for text in ('true', 'Yes', '1', 'y'):
            self.assertTrue(strbool(text))
        for text in ('false', 'No', '0', 'n'):
            self.assertFalse(strbool(text))
        with self.assertRaises(ValueError):
            strbool('maybe')


def main():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestConfiguration))
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestNestedHelpers))
    runner = unittest.TextTestRunner()
    runner.run(suite)


if __name__ == '__main__':
    main()
