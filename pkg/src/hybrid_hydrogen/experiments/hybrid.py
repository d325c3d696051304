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

"""Hybrid runs of a classical proton and a quantum electron.

Two systems are supported. 'circular' propagates the 3-d circular packet in
the adiabatic representation. 'softcore' propagates a 1-d electron in the
soft-core potential, described by the oracle section, either on the grid
(Ehrenfest law) or in attached eigenstates (adiabatic law).
"""

import math

import numpy as np

import hybrid_hydrogen.experiments as hh_experiments
from hybrid_hydrogen import hybrid, softcore
from hybrid_hydrogen.experiments.baseconfiguration import SoftcoreConfiguration, require
from hybrid_hydrogen.experiments.runner import write_record, write_snapshot_artifact
from hybrid_hydrogen.interfaces import InvariantCheck
from hybrid_hydrogen.reference import build_packet, relative_momentum
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

_experiment_name = 'hybrid'

SYSTEMS = ('circular', 'softcore')
REPRESENTATIONS = ('', 'adiabatic', 'grid')
# eigenstates used to expand a displaced initial state
DISPLACED_BASIS_SIZE = 16
# default steps per period
CIRCULAR_STEPS_PER_PERIOD = 4096
GRID_STEPS_PER_PERIOD = 8192

NORM_TOLERANCE = 1e-10
PROTON_MOMENTUM_TOLERANCE = 1e-12
FREE_PROTON_TOLERANCE = 1e-9
POPULATION_TOLERANCE = 1e-10
ANALYTIC_MOMENTUM_TOLERANCE = 0.01
MOMENTUM_TOLERANCE = 1e-6
ENERGY_TOLERANCE = 1e-8


@hh_experiments.register(name=_experiment_name, type='config')
class HybridConfiguration(SoftcoreConfiguration):
    """Configuration of hybrid runs"""

    def __init__(self):
        super(HybridConfiguration, self).__init__()
        self.add_param('hybrid.system', 'circular', f'Electron system, one of {", ".join(SYSTEMS)}')
        self.add_param('hybrid.representation', '',
                       'Electron representation: adiabatic, grid, or empty to follow the force law')
        self.add_param('hybrid.r_p0', [0.0, 0.0, 0.0], 'Initial proton position (bohr)')
        self.add_param('hybrid.p_p0', [0.0, 0.0, 0.0], 'Initial proton momentum (a.u.)')
        self.add_param('hybrid.dt', 0.0, 'Time step, 0 selects period/4096 (circular) or period/8192 (grid)')

    def validate(self):
        super(HybridConfiguration, self).validate()
        settings = self.hybrid
        require(settings.system in SYSTEMS, 'hybrid.system', f'unknown system "{settings.system}"')
        require(settings.representation in REPRESENTATIONS, 'hybrid.representation',
                f'unknown representation "{settings.representation}"')
        require(len(settings.r_p0) == 3 and all(map(math.isfinite, settings.r_p0)), 'hybrid.r_p0',
                'must be three finite numbers')
        require(len(settings.p_p0) == 3 and all(map(math.isfinite, settings.p_p0)), 'hybrid.p_p0',
                'must be three finite numbers')
        require(math.isfinite(settings.dt) and settings.dt >= 0, 'hybrid.dt', 'must be non-negative')
        if settings.system == 'circular':
            require(self.force_law() is hybrid.ForceLaw.ADIABATIC, 'experiment.force_law',
                    'circular packets are propagated with the adiabatic law only')
            require(settings.representation in ('', 'adiabatic'), 'hybrid.representation',
                    'circular packets use the adiabatic representation')
        return self

    def representation(self):
        if self.hybrid.representation:
            return self.hybrid.representation
        if self.hybrid.system == 'circular' or self.force_law() is hybrid.ForceLaw.ADIABATIC:
            return 'adiabatic'
        return 'grid'


def electron_basis(scenario, count, method=None):
    """Soft-core eigenstates of the electron (mass m_e) on the laboratory grid of a two-body scenario"""
    method = method or scenario.relaxation
    kwargs = {'dtau': 0.02, 'tolerance': 1e-10} if method == 'imaginary-time' else {}
    return softcore.eigenbasis(scenario.grid(), scenario.params.m_e, scenario.softening, count,
                               method=method, **kwargs)


def softcore_state(scenario, representation, r_p0=0.0, p_p0=0.0):
    """1-d hybrid state matching the relative state of a two-body scenario.

    A superposition uses the scenario weights over electron eigenstates, a
    displaced ground state is expanded in the lowest DISPLACED_BASIS_SIZE
    eigenstates.
    """
    if scenario.initial_state == 'superposition':
        count = max(2, len(scenario.weights))
        basis = electron_basis(scenario, count)
        coeffs = np.zeros(count)
        coeffs[:len(scenario.weights)] = scenario.weights
    else:
        # box states above the bound ones are too close in energy for imaginary-time relaxation
        basis = electron_basis(scenario, DISPLACED_BASIS_SIZE, method='fgh')
        displaced = softcore.translate(basis.states[0], basis.spacing, scenario.displacement)
        coeffs = basis.project(displaced)
        lost = 1.0 - float(np.sum(np.abs(coeffs) ** 2))
        logger.info(f'displaced state expanded in {basis.count} eigenstates, weight outside {lost:.3g}')
    return hybrid.init_softcore_hybrid(basis, coeffs, r_p0, p_p0, representation=representation)


def _max_deviation(values, reference):
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values - reference))) if values.size else 0.0


def check_record(record, params, law, manifest, momentum_tolerance=MOMENTUM_TOLERANCE):
    """Invariants every hybrid record must satisfy under its force law"""
    steps = max(1, int(record.meta.get('steps', 1)))
    norm_budget = NORM_TOLERANCE * max(1.0, steps / 1e4)
    manifest.add_invariant(InvariantCheck('hybrid_norm', _max_deviation(record['norm'], record['norm'][0]),
                                          norm_budget))
    t = record['t']
    r_p, p_p, P, H = record['r_p'], record['p_p'], record['P'], record['H']
    if law is hybrid.ForceLaw.ADIABATIC:
        manifest.add_invariant(InvariantCheck('proton_momentum', _max_deviation(p_p, p_p[0]),
                                              PROTON_MOMENTUM_TOLERANCE))
        free = r_p[0] + np.outer(t - t[0], p_p[0]) / params.m_p
        manifest.add_invariant(InvariantCheck('free_proton', _max_deviation(r_p, free),
                                              FREE_PROTON_TOLERANCE))
        populations = record['populations']
        if populations.ndim == 2 and populations.shape[1]:
            manifest.add_invariant(InvariantCheck('populations', _max_deviation(populations, populations[0]),
                                                  POPULATION_TOLERANCE))
    else:
        manifest.add_invariant(InvariantCheck('total_momentum', _max_deviation(P, P[0]), momentum_tolerance))
        manifest.add_invariant(InvariantCheck('hybrid_energy', _max_deviation(H, H[0]) / abs(H[0]),
                                              ENERGY_TOLERANCE))


def _build(config):
    law = config.force_law()
    if config.hybrid.system == 'circular':
        params = config.params()
        spec = config.packet_spec()
        state = hybrid.init_hybrid(spec, config.hybrid.r_p0, config.hybrid.p_p0, params)
        steps_per_period = CIRCULAR_STEPS_PER_PERIOD
    else:
        scenario = config.scenario()
        params = scenario.params
        state = softcore_state(scenario, config.representation(), config.hybrid.r_p0[0], config.hybrid.p_p0[0])
        steps_per_period = GRID_STEPS_PER_PERIOD if state.representation == 'grid' else CIRCULAR_STEPS_PER_PERIOD
    period = hybrid.electron_period(state)
    dt = config.hybrid.dt or period / steps_per_period
    scenario = hybrid.HybridScenario(initial=state, params=params, law=law, dt=dt,
                                     duration=config.experiment.horizon * period, stride=config.experiment.stride,
                                     keep_densities=config.output.snapshots and state.dim == 1)
    return scenario, period


@hh_experiments.register(name=_experiment_name, type='run')
def run(config, outdir, manifest):
    scenario, period = _build(config)
    params, law = scenario.params, scenario.law
    record = hybrid.run_hybrid(scenario)

    P = record['P']
    excursion = _max_deviation(P, P[0]) if len(P) else 0.0
    manifest.add_derived(period=period, dt=scenario.dt, steps=scenario.steps, force_law=law.value,
                         representation=scenario.initial.representation, potential=record.meta['potential'],
                         electron_mass=scenario.initial.electron.mass, reduced_mass=params.mu,
                         frequency_ratio=params.mu / scenario.initial.electron.mass,
                         proton_displacement=float(np.linalg.norm(record['r_p'][-1] - record['r_p'][0])),
                         total_momentum_excursion=excursion,
                         energy_drift=_max_deviation(record['H'], record['H'][0]))
    check_record(record, params, law, manifest)

    if config.hybrid.system == 'circular':
        spec = config.packet_spec()
        manifest.add_derived(momentum_excursion_scale=0.5 * params.mu / spec.n_bar)
        # P(t) - p_p must follow the analytic electron momentum of the packet
        packet = build_packet(spec, params, scenario.initial.electron.mass)
        analytic = relative_momentum(packet, record['t'])
        deviation = _max_deviation(P - record['p_p'], analytic) / max(np.max(np.abs(analytic)), 1e-300)
        manifest.add_invariant(InvariantCheck('analytic_electron_momentum', deviation, ANALYTIC_MOMENTUM_TOLERANCE))

    write_record(record, outdir, 'hybrid', config, manifest)
    if record.densities:
        write_snapshot_artifact(np.asarray(record.densities), outdir, 'electron_density', manifest)
