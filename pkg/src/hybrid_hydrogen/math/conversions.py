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

"""This file contains helper functions to convert between atomic and SI units.

All computations in hybrid_hydrogen are carried out in Hartree atomic units
(hbar = m_e = a_B = e = 1). The functions contained in this file map from
atomic units to SI and back, and are only used for reporting. Conversion
factors are the CODATA values shipped with scipy.constants.
"""

from scipy import constants

BOHR_RADIUS = constants.physical_constants['Bohr radius'][0]
ATOMIC_TIME = constants.physical_constants['atomic unit of time'][0]
HARTREE = constants.physical_constants['Hartree energy'][0]
ATOMIC_MOMENTUM = constants.physical_constants['atomic unit of momentum'][0]
HARTREE_IN_EV = constants.physical_constants['Hartree energy in eV'][0]


def au_to_m(x):
    """Convert a length in bohr to meters."""
    return x * BOHR_RADIUS if x is not None else x


def m_to_au(x):
    """Convert a length in meters to bohr."""
    return x / BOHR_RADIUS if x is not None else x


def au_to_s(t):
    """Convert a time in atomic units to seconds."""
    return t * ATOMIC_TIME if t is not None else t


def s_to_au(t):
    """Convert a time in seconds to atomic units."""
    return t / ATOMIC_TIME if t is not None else t


def hartree_to_j(e):
    """Convert an energy in hartree to joule."""
    return e * HARTREE if e is not None else e


def j_to_hartree(e):
    return e / HARTREE if e is not None else e


def hartree_to_ev(e):
    """Convert an energy in hartree to electron volts."""
    return e * HARTREE_IN_EV if e is not None else e


def au_to_kg_m_per_s(p):
    """Convert a momentum in atomic units to kg m / s."""
    return p * ATOMIC_MOMENTUM if p is not None else p


def unit_system():
    """Description of the internal unit system, as written to run manifests."""
    return {
        'name': 'hartree atomic units',
        'length': {'unit': 'bohr', 'si': BOHR_RADIUS},
        'time': {'unit': 'hbar/hartree', 'si': ATOMIC_TIME},
        'energy': {'unit': 'hartree', 'si': HARTREE},
        'momentum': {'unit': 'hbar/bohr', 'si': ATOMIC_MOMENTUM},
    }
