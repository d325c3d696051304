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
import pkgutil
import importlib
from functools import partial


def _auto_import(pkgname: str, dirname: str, subdirs: list):
    """Import every test module found in the subdirectories of the tests package.

    An empty list of subdirectories selects all subpackages of dirname.
    """
    if not subdirs:
        subdirs = sorted(d for d in os.listdir(dirname)
                         if os.path.isdir(os.path.join(dirname, d)) and not d.startswith('__') and d != 'data')
    for subdir in subdirs:
        path = os.path.realpath(os.path.join(dirname, subdir))
        for _, module_name, ispkg in pkgutil.iter_modules([path]):
            if not ispkg and module_name.startswith('test_'):
                importlib.import_module(f'.{subdir}.{module_name}', pkgname)


# test group name -> list of registered TestCase classes
_available_tests = {}


def register(name: str):
    """Register a TestCase class under a test group name.

    Test cases of one subfolder share the group name, e.g. all classes in
    tests/oracle are registered as 'test_oracle':

    ..code::
        @tests.register(name='test_oracle')
        class TestPropagation(unittest.TestCase):
            ...

    Raises:
        ValueError: if no name is given
    """
    def _register(obj, name):
        if name is None:
            raise ValueError(f'Provide a test group name for {obj.__name__}')
        _available_tests.setdefault(name, []).append(obj)
        return obj
    return partial(_register, name=name)


def get_registered(name: str = None):
    """All registered test groups, or the test cases of one group"""
    if name is None:
        return _available_tests
    if name not in _available_tests:
        raise ValueError(f'Queried test group "{name}" not among available: {list(_available_tests.keys())}')
    return _available_tests[name]


_auto_import(pkgname=__name__, dirname=os.path.dirname(__file__), subdirs=[])
