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


def _auto_import(pkgname: str, dirname: str, subdirs: list):
    """Import all (non-package) modules found in subdirectories of a package.

    Call from the package __init__.py so that modules registering themselves
    with a decorator are loaded:

        _auto_import(pkgname=__name__, dirname=os.path.dirname(__file__), subdirs=[''])

    Args:
        pkgname(str): name of the calling package
        dirname(str): directory of the calling package
        subdirs(list(str)): subdirectories to import, '' for the package itself
    """
    for subdir in subdirs:
        path = os.path.realpath(os.path.join(dirname, subdir))
        for _, module_name, ispkg in pkgutil.iter_modules([path]):
            if ispkg:
                continue
            if subdir:
                importlib.import_module(f'.{subdir}.{module_name}', pkgname)
            else:
                importlib.import_module(f'.{module_name}', pkgname)
