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

"""The experiments module contains the runnable experiment kinds.

Each kind registers a configuration class and a run function under its name,
e.g. 'quantum-reference', 'hybrid', 'oracle' and 'compare'.
"""

from .baseconfiguration import BaseConfiguration  # noqa

# concrete experiments are autoimported at the end of the file
import os
from functools import partial
from hybrid_hydrogen.cli import _auto_import

_available_experiments = {}


def register(name: str, type: str = None):
    """Register a class/function under an experiment name.

    This function should be used as a decorator:

    ..code::
        @register(name='hybrid', type='config')
        class HybridConfiguration(BaseConfiguration):
            ...

        @register(name='hybrid', type='run')
        def run(config, outdir, manifest):
            ...

    Args:
        name(str): experiment kind
        type(str): 'run' for the run function, 'config' for its configuration class

    Returns:
        The object that was passed in.

    Raises:
        ValueError: if invalid name/type given.
    """
    def _register(obj, name, obj_type):
        if obj_type not in ['run', 'config']:
            raise ValueError(f'Requested type {obj_type} is not available')
        if name is None:
            raise ValueError(f'Provide a name for the experiment of type {obj.__name__.lower()}')
        _available_experiments.setdefault(name, dict())[obj_type] = obj
        return obj
    return partial(_register, name=name, obj_type=type)


def get_registered(name: str = None):
    """Return the dictionary of experiments registered via register(name, type)

    Args:
        name(str): kind of the experiment to query, None returns all
    """
    if name is None:
        return _available_experiments
    if name not in _available_experiments:
        raise ValueError(f'Queried experiment "{name}" not among available: {sorted(_available_experiments)}')
    return _available_experiments[name]


_auto_import(pkgname=__name__, dirname=os.path.dirname(__file__), subdirs=[''])
