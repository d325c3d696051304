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

from hybrid_hydrogen.core import PROTON_ELECTRON_MASS_RATIO, PacketSpec, make_params
from hybrid_hydrogen.datastructures import Configuration
from hybrid_hydrogen.exceptions import ConfigValidationError, HybridHydrogenError
from hybrid_hydrogen.hybrid import ForceLaw
from hybrid_hydrogen.oracle import INITIAL_STATES, RELAXATION_METHODS, OracleScenario
from hybrid_hydrogen.reference import ComState
from hybrid_hydrogen.utils.plotting import PLOT_FORMATS

EXPERIMENT_KINDS = ('quantum-reference', 'hybrid', 'oracle', 'compare')


def require(condition, field, message):
    """Raise ConfigValidationError for field unless condition holds"""
    if not condition:
        raise ConfigValidationError(field, message)


def _positive(value):
    return math.isfinite(value) and value > 0


class BaseConfiguration(Configuration):
    """Sections shared by every experiment: experiment, atom, packet and output."""

    def __init__(self):
        super(BaseConfiguration, self).__init__()

        # experiment
        self.add_param('experiment.kind', '', f'Experiment kind, one of {", ".join(EXPERIMENT_KINDS)}')
        self.add_param('experiment.force_law', 'adiabatic', 'Proton force law of hybrid runs: adiabatic, ehrenfest')
        self.add_param('experiment.horizon', 10.0, 'Integration horizon in Kepler periods')
        self.add_param('experiment.time', 200.0, 'Absolute propagation time of two-body runs (a.u.)')
        self.add_param('experiment.stride', 1, 'Number of steps (or scan points) between recorded samples')
        self.add_param('experiment.seed', 0, 'Reserved, all runs are deterministic')

        # atom
        self.add_param('atom.mass_ratio', PROTON_ELECTRON_MASS_RATIO, 'Proton to electron mass ratio m_p/m_e')

        # packet
        self.add_param('packet.n_bar', 60.0, 'Mean principal quantum number of the circular packet')
        self.add_param('packet.sigma_n', 0.8, 'Width of the Gaussian weight over n')
        self.add_param('packet.n_lo', 0, 'Lowest n of the window, 0 selects the default window')
        self.add_param('packet.n_hi', 0, 'Highest n of the window, 0 selects the default window')
        self.add_param('packet.sigma_com', 10.0, 'Width of the center-of-mass Gaussian (bohr)')
        self.add_param('packet.com_mode', 'frozen', 'Center-of-mass width: frozen, free-spreading')

        # output
        self.add_param('output.directory', '', 'Output directory, empty selects runs/<kind>')
        self.add_param('output.snapshots', False, 'Write binary density snapshots')
        self.add_param('output.plots', True, 'Write vector plots')
        self.add_param('output.plot_format', 'svg', f'Plot format, one of {", ".join(PLOT_FORMATS)}')
        self.add_param('output.grid_points', 256, 'Points per axis of planar density grids')

    def validate(self):
        """Check all values against the validity ranges of the modules using them.

        Raises:
            ConfigValidationError: naming the offending field
        """
        require(self.experiment.kind in EXPERIMENT_KINDS, 'experiment.kind',
                f'unknown kind "{self.experiment.kind}", expected one of {EXPERIMENT_KINDS}')
        try:
            ForceLaw.parse(self.experiment.force_law)
        except ValueError as err:
            raise ConfigValidationError('experiment.force_law', str(err))
        require(_positive(self.experiment.horizon), 'experiment.horizon', 'must be positive')
        require(_positive(self.experiment.time), 'experiment.time', 'must be positive')
        require(self.experiment.stride >= 1, 'experiment.stride', 'must be at least 1')

        ratio = self.atom.mass_ratio
        require(_positive(ratio), 'atom.mass_ratio', f'must be positive and finite, got {ratio}')

        packet = self.packet
        require(math.isfinite(packet.n_bar) and packet.n_bar >= 1, 'packet.n_bar', f'must be >= 1, got {packet.n_bar}')
        require(_positive(packet.sigma_n), 'packet.sigma_n', f'must be positive, got {packet.sigma_n}')
        require(_positive(packet.sigma_com), 'packet.sigma_com', f'must be positive, got {packet.sigma_com}')
        require(packet.com_mode in ('frozen', 'free-spreading'), 'packet.com_mode',
                f'unknown mode "{packet.com_mode}"')
        require((packet.n_lo == 0) == (packet.n_hi == 0), 'packet.n_lo',
                'set both n_lo and n_hi, or neither')
        if packet.n_lo:
            require(packet.n_lo >= 1, 'packet.n_lo', 'must be >= 1')
            require(packet.n_lo <= packet.n_bar <= packet.n_hi, 'packet.n_hi',
                    f'window [{packet.n_lo}, {packet.n_hi}] does not contain n_bar={packet.n_bar}')

        require(self.output.plot_format in PLOT_FORMATS, 'output.plot_format',
                f'unknown format "{self.output.plot_format}"')
        require(self.output.grid_points >= 16, 'output.grid_points', 'must be at least 16')
        return self

    def params(self):
        return make_params(self.atom.mass_ratio)

    def force_law(self):
        return ForceLaw.parse(self.experiment.force_law)

    def packet_spec(self):
        packet = self.packet
        window = (packet.n_lo, packet.n_hi) if packet.n_lo else None
        try:
            return PacketSpec(n_bar=packet.n_bar, sigma_n=packet.sigma_n, window=window, sigma_com=packet.sigma_com)
        except HybridHydrogenError as err:
            raise ConfigValidationError('packet', str(err))

    def com_state(self, t=0.0):
        return ComState(sigma0=self.packet.sigma_com, time=t, mode=self.packet.com_mode)


class SoftcoreConfiguration(BaseConfiguration):
    """Adds the one dimensional soft-core model shared by two-body and 1-d hybrid runs."""

    def __init__(self):
        super(SoftcoreConfiguration, self).__init__()

        self.add_param('oracle.mass_ratio', 100.0, 'Proton to electron mass ratio of the 1-d model')
        self.add_param('oracle.softening', 1.0, 'Softening length s of -1/sqrt(x^2 + s^2) (bohr)')
        self.add_param('oracle.half_width', 40.0, 'Grid half extent per axis (bohr)')
        self.add_param('oracle.points', 512, 'Grid points per axis')
        self.add_param('oracle.dt', 0.05, 'Time step (a.u.)')
        self.add_param('oracle.sigma0', 1.0, 'Initial center-of-mass width (bohr)')
        self.add_param('oracle.com_momentum', 0.0, 'Center-of-mass momentum (a.u.)')
        self.add_param('oracle.initial_state', 'superposition',
                       f'Initial relative state, one of {", ".join(INITIAL_STATES)}')
        self.add_param('oracle.weights', [1.0, 1.0], 'Bound state weights of the superposition')
        self.add_param('oracle.displacement', 5.0, 'Shift of the displaced ground state (bohr)')
        self.add_param('oracle.steps_per_sample', 20, 'Steps between recorded samples')
        self.add_param('oracle.relaxation', 'imaginary-time',
                       f'Bound state method, one of {", ".join(RELAXATION_METHODS)}')
        self.add_param('oracle.boundary_budget', 1e-6, 'Largest boundary density before a run aborts')

    def validate(self):
        super(SoftcoreConfiguration, self).validate()
        oracle = self.oracle
        require(_positive(oracle.mass_ratio), 'oracle.mass_ratio', 'must be positive and finite')
        require(_positive(oracle.softening), 'oracle.softening', 'must be positive')
        require(_positive(oracle.half_width), 'oracle.half_width', 'must be positive')
        require(oracle.points >= 8 and oracle.points % 2 == 0, 'oracle.points', 'must be an even number >= 8')
        require(2.0 * oracle.half_width / oracle.points <= 0.25 * oracle.softening * (1.0 + 1e-12),
                'oracle.points', 'grid spacing must not exceed a quarter of the softening length')
        require(_positive(oracle.dt), 'oracle.dt', 'must be positive')
        require(_positive(oracle.sigma0), 'oracle.sigma0', 'must be positive')
        require(math.isfinite(oracle.com_momentum), 'oracle.com_momentum', 'must be finite')
        require(oracle.initial_state in INITIAL_STATES, 'oracle.initial_state',
                f'unknown initial state "{oracle.initial_state}"')
        require(len(oracle.weights) >= 1 and any(oracle.weights), 'oracle.weights',
                'at least one weight must be nonzero')
        require(oracle.steps_per_sample >= 1, 'oracle.steps_per_sample', 'must be at least 1')
        require(oracle.relaxation in RELAXATION_METHODS, 'oracle.relaxation',
                f'unknown method "{oracle.relaxation}"')
        require(_positive(oracle.boundary_budget), 'oracle.boundary_budget', 'must be positive')
        return self

    def scenario(self) -> OracleScenario:
        oracle = self.oracle
        return OracleScenario(
            mass_ratio=oracle.mass_ratio, softening=oracle.softening, half_width=oracle.half_width,
            points=oracle.points, dt=oracle.dt, duration=self.experiment.time, sigma0=oracle.sigma0,
            com_momentum=oracle.com_momentum, initial_state=oracle.initial_state, weights=tuple(oracle.weights),
            displacement=oracle.displacement, steps_per_sample=oracle.steps_per_sample,
            relaxation=oracle.relaxation, boundary_budget=oracle.boundary_budget)
