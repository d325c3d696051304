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

import numpy as np

import hybrid_hydrogen.experiments as hh_experiments
from hybrid_hydrogen import oracle
from hybrid_hydrogen.experiments.baseconfiguration import SoftcoreConfiguration
from hybrid_hydrogen.experiments.runner import write_record, write_snapshot_artifact
from hybrid_hydrogen.interfaces import InvariantCheck
from hybrid_hydrogen.math.grids import PlanarDensity
from hybrid_hydrogen.utils.logging import get_logger
from hybrid_hydrogen.utils.plotting import plot_heatmaps, plot_time_series

logger = get_logger()

_experiment_name = 'oracle'

NORM_TOLERANCE = 1e-10
MOMENTUM_TOLERANCE = 1e-8
ENERGY_TOLERANCE = 1e-3
CENTER_OF_MASS_TOLERANCE = 1e-8
PROTON_RELATION_TOLERANCE = 0.1
# smallest relative excursion (bohr) for which the proton relation is checked
MIN_RELATIVE_EXCURSION = 1e-6
PURITY_SLACK = 1e-12


@hh_experiments.register(name=_experiment_name, type='config')
class OracleConfiguration(SoftcoreConfiguration):
    """Configuration of exact two-body runs, all settings live in the oracle section"""


def check_record(record, scenario, manifest):
    """Conservation laws of an exact two-body record"""
    params = scenario.params
    t = record['t']
    norm = record['norm']
    budget = NORM_TOLERANCE * max(1.0, scenario.steps / 1e4)
    manifest.add_invariant(InvariantCheck('twobody_norm', float(np.max(np.abs(norm - norm[0]))), budget))

    P = record['P'][:, 0]
    manifest.add_invariant(InvariantCheck('twobody_momentum', float(np.max(np.abs(P - P[0]))), MOMENTUM_TOLERANCE))

    H = record['H']
    manifest.add_invariant(InvariantCheck('twobody_energy', float(np.max(np.abs(H - H[0])) / abs(H[0])),
                                          ENERGY_TOLERANCE))

    # M <R>(t) = M <R>(0) + P t
    weighted = params.m_e * record['r_e'][:, 0] + params.m_p * record['r_p'][:, 0]
    drift = weighted - weighted[0] - P[0] * (t - t[0])
    manifest.add_invariant(InvariantCheck('center_of_mass_motion', float(np.max(np.abs(drift))),
                                          CENTER_OF_MASS_TOLERANCE))

    # around the uniformly moving center of mass the proton retraces -(m_e/M) <x_e - x_p>
    relative_excursion = float(np.ptp(record['r_e'][:, 0] - record['r_p'][:, 0]))
    if relative_excursion > MIN_RELATIVE_EXCURSION:
        line = (weighted[0] + P[0] * (t - t[0])) / params.M
        ratio = float(np.ptp(record['r_p'][:, 0] - line)) / (params.m_e / params.M * relative_excursion)
        manifest.add_invariant(InvariantCheck('proton_relation', abs(ratio - 1.0), PROTON_RELATION_TOLERANCE))

    if 'purity' in record.extras:
        manifest.add_invariant(InvariantCheck('purity_bound', float(np.max(record['purity'])), 1.0 + PURITY_SLACK))


def derived_quantities(record, scenario):
    params = scenario.params
    r_p = record['r_p'][:, 0]
    relative = record['r_e'][:, 0] - r_p
    proton_excursion = float(np.ptp(r_p))
    relative_excursion = float(np.ptp(relative))
    derived = {
        'steps': scenario.steps, 'spacing': scenario.spacing,
        'initial_energy': float(record['H'][0]), 'final_energy': float(record['H'][-1]),
        'proton_excursion': proton_excursion, 'relative_excursion': relative_excursion,
        'proton_relation_ratio': (proton_excursion / (params.m_e / params.M * relative_excursion)
                                  if relative_excursion > 0 else float('nan')),
        'final_boundary_density': oracle.boundary_density(record.final_state, scenario.boundary_fraction),
    }
    if 'purity' in record.extras:
        derived.update(purity_initial=float(record['purity'][0]), purity_min=float(np.min(record['purity'])),
                       purity_final=float(record['purity'][-1]))
    return derived


def write_oracle_artifacts(record, outdir, config, manifest):
    write_record(record, outdir, 'oracle', config, manifest)
    field = record.final_state
    density = np.abs(field.psi) ** 2
    if config.output.snapshots:
        write_snapshot_artifact(field.psi, outdir, 'twobody_field_final', manifest)
        write_snapshot_artifact(np.asarray(record.densities), outdir, 'electron_marginals', manifest)
    if config.output.plots:
        fmt = config.output.plot_format
        filename = os.path.join(outdir, 'plots', f'twobody_density.{fmt}')
        manifest.add_artifact(plot_heatmaps(filename, [PlanarDensity(density, field.x, field.x)],
                                            [f'|psi(x_e, x_p)|^2 at t={field.t:g}'],
                                            xlabel='x_e [bohr]', ylabel='x_p [bohr]'))
        if 'purity' in record.extras:
            filename = os.path.join(outdir, 'plots', f'purity.{fmt}')
            manifest.add_artifact(plot_time_series(filename, record['t'], {'Tr(rho_p^2)': record['purity']},
                                                   ylabel='proton purity'))


@hh_experiments.register(name=_experiment_name, type='run')
def run(config, outdir, manifest):
    scenario = config.scenario()
    record = oracle.run_oracle(scenario)
    manifest.add_derived(**derived_quantities(record, scenario))
    check_record(record, scenario, manifest)
    write_oracle_artifacts(record, outdir, config, manifest)
