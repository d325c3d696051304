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

"""Run all registered tests, or only some groups.

Example:

    $ python -m tests
    $ python -m tests --groups test_oracle test_hybrid
"""

import argparse
import sys
import unittest


def parse_arguments(argv=None):
    parser = argparse.ArgumentParser(description='Run tests of hybrid_hydrogen', prog='python -m tests')
    parser.add_argument('--groups', nargs='*', default=None,
                        help='Test groups to run, e.g. test_core. Default runs every group')
    parser.add_argument('--list', action='store_true', help='Print the registered test groups and exit')
    return parser.parse_args(args=argv)


def create_test_suite(groups=None):
    from tests import get_registered as get_registered_tests
    suite = unittest.TestSuite()
    for group_name, group in sorted(get_registered_tests().items()):
        if groups and group_name not in groups:
            continue
        for test in group:
            suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(test))
    return suite


def main():
    args = parse_arguments()
    if args.list:
        from tests import get_registered as get_registered_tests
        for name, group in sorted(get_registered_tests().items()):
            print(f'{name}: {", ".join(t.__name__ for t in group)}')
        sys.exit(0)
    suite = create_test_suite(args.groups)
    result = unittest.TextTestRunner().run(suite)
    sys.exit(not result.wasSuccessful())


if __name__ == "__main__":
    main()
