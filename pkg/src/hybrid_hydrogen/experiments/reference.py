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

"""Full quantum reference: packet time scales, centers and coarse-grained densities."""

import os

import numpy as np

import hybrid_hydrogen.experiments as hh_experiments
from hybrid_hydrogen import reference
from hybrid_hydrogen.basis import bohr_radius
from hybrid_hydrogen.exceptions import GridError
from hybrid_hydrogen.experiments.baseconfiguration import require
from hybrid_hydrogen.experiments.runner import write_snapshot_artifact
from hybrid_hydrogen.interfaces import InvariantCheck
from hybrid_hydrogen.math.grids import PlaneGrid
from hybrid_hydrogen.utils.io import try_makedirs, write_csv
from hybrid_hydrogen.utils.logging import get_logger
from hybrid_hydrogen.utils.plotting import plot_heatmaps, plot_time_series

logger = get_logger()

_experiment_name = 'quantum-reference'

NORM_TOLERANCE = 1e-12
FRAME_TOLERANCE = 1e-12
COARSE_GRAIN_TOLERANCE = 1e-6
REVIVAL_WINDOW = 0.05
REVIVAL_LOCALIZATION = 0.5
# smallest L1 gap between |reduced|^2 and the coarse-grained electron density
REDUCED_DENSITY_GAP = 1e-6
# planar grids reach this multiple of n_bar^2 a
GRID_EXTENT = 1.6


@hh_experiments.register(name=_experiment_name, type='config')
class ReferenceConfiguration(hh_experiments.BaseConfiguration):
    """Configuration of the full quantum reference"""

    def __init__(self):
        super(ReferenceConfiguration, self).__init__()
        self.add_param('reference.resolution', 64, 'Samples per Kepler period of the time series')
        self.add_param('reference.snapshot_times', [0.0, 10.0], 'Times (Kepler periods) of density snapshots')

    def validate(self):
        super(ReferenceConfiguration, self).validate()
        require(self.packet.n_bar >= 5, 'packet.n_bar', 'time scales need n_bar >= 5')
        require(self.reference.resolution >= 4, 'reference.resolution', 'must be at least 4')
        require(all(t >= 0 for t in self.reference.snapshot_times), 'reference.snapshot_times',
                'times must be non-negative')
        return self


def _time_series(packet, t_kepler, config):
    dt = t_kepler / config.reference.resolution * config.experiment.stride
    count = int(np.floor(config.experiment.horizon * t_kepler / dt + 1e-9)) + 1
    t = np.arange(count) * dt
    r = reference.relative_center(packet, t)
    p = reference.relative_momentum(packet, t)
    r_e, r_p = reference.particle_centers(r, packet.params)
    columns = [('t', 'a.u. time', t)]
    for name, unit, values in (('r', 'bohr', r), ('p', 'a.u. momentum', p), ('r_e', 'bohr', r_e),
                               ('r_p', 'bohr', r_p)):
        columns += [(f'{name}_{axis}', unit, values[:, i]) for i, axis in enumerate('xyz')]
    columns.append(('localization', '1', reference.localization(packet, t)))
    columns.append(('autocorrelation', '1', reference.autocorrelation(packet, t)))
    return columns, r_e, r_p


def _densities(packet, t, grid, com):
    raw = reference.sample_density_plane(packet, t, grid)
    electron = reference.particle_density(packet, t, com, 'electron', grid)
    proton = reference.particle_density(packet, t, com, 'proton', grid)
    return raw, electron, proton


def _check_coarse_graining(packet, grid, com, params, manifest):
    raw = reference.sample_density_plane(packet, packet.time, grid)
    width = reference.electron_kernel_width(com.width(params.M, params.hbar), params)
    smeared = reference.coarse_grain(raw, width)
    change = abs(smeared.integral() - raw.integral()) / raw.integral()
    manifest.add_invariant(InvariantCheck('coarse_grain_integral', change, COARSE_GRAIN_TOLERANCE))


@hh_experiments.register(name=_experiment_name, type='run')
def run(config, outdir, manifest):
    params = config.params()
    spec = config.packet_spec()
    com = config.com_state()
    packet = reference.build_packet(spec, params)

    scales = reference.time_scales(spec, params)
    t_kepler, t_rev = scales.t_kepler, scales.t_rev
    t_reloc, reloc_peak = reference.relocalization_time(packet, t_kepler, t_rev)
    t_full, full_peak = reference.revival_time(packet, t_kepler, t_rev)
    r0 = float(np.linalg.norm(reference.relative_center(packet, 0.0)))
    sigma = com.width(params.M, params.hbar)
    width_e = reference.electron_kernel_width(sigma, params)
    width_p = reference.proton_kernel_width(sigma, params)
    manifest.add_derived(
        t_kepler=t_kepler, t_spread=scales.t_spread, t_rev=t_rev,
        t_rev_over_t_kepler=t_rev / t_kepler, t_spread_over_t_kepler=scales.t_spread / t_kepler,
        relocalization_time=t_reloc, relocalization_localization=reloc_peak,
        autocorrelation_revival_time=t_full, autocorrelation_revival=full_peak,
        initial_center_distance=r0, initial_center_over_n_bar_squared=r0 / spec.n_bar ** 2,
        electron_kernel_width=width_e, proton_kernel_width=width_p, kernel_width_ratio=width_p / width_e,
        total_mass_over_electron_mass=params.M / params.m_e, window=list(spec.window))
    logger.info(f't_kepler={t_kepler:.6g}, t_spread={scales.t_spread:.6g}, t_rev={t_rev:.6g}')

    # invariants
    final = reference.evolve_coeffs(packet, config.experiment.horizon * t_kepler)
    manifest.add_invariant(InvariantCheck('norm', abs(final.norm() - 1.0), NORM_TOLERANCE))
    columns, r_e, r_p = _time_series(packet, t_kepler, config)
    imbalance = np.max(np.linalg.norm(params.m_e * r_e + params.m_p * r_p, axis=-1)) / max(r0, 1e-300)
    manifest.add_invariant(InvariantCheck('frame_identity', imbalance, FRAME_TOLERANCE))
    ordered = t_kepler < scales.t_spread < t_rev
    manifest.add_invariant(InvariantCheck('time_scale_order', scales.t_spread / t_kepler, t_rev / t_kepler,
                                          passed=ordered))
    manifest.add_invariant(InvariantCheck('revival_time', abs(t_reloc / t_rev - 1.0), REVIVAL_WINDOW))
    manifest.add_invariant(InvariantCheck('revival_localization', reloc_peak, REVIVAL_LOCALIZATION,
                                          comparison='>='))

    filename = os.path.join(outdir, 'reference.csv')
    write_csv(filename, columns)
    manifest.add_artifact(filename)

    # planar densities
    a = bohr_radius(params, packet.particle_mass)
    grid = PlaneGrid(half_width=GRID_EXTENT * spec.n_bar ** 2 * a, points=config.output.grid_points)
    _check_coarse_graining(packet, grid, com, params, manifest)
    if config.output.plots:
        plotdir = os.path.join(outdir, 'plots')
        try_makedirs(plotdir)
        t = columns[0][2]
        filename = plot_time_series(os.path.join(plotdir, f'localization.{config.output.plot_format}'), t / t_kepler,
                                    {'|<r>(t)| / |<r>(0)|': columns[-2][2], 'autocorrelation': columns[-1][2]},
                                    xlabel='t [Kepler periods]')
        manifest.add_artifact(filename)

    for t_snap in config.reference.snapshot_times:
        t = t_snap * t_kepler
        raw, electron, proton = _densities(packet, t, grid, com)
        tag = f't{t_snap:g}'
        if config.output.snapshots:
            for name, density in (('relative', raw), ('electron', electron), ('proton', proton)):
                write_snapshot_artifact(density.values, outdir, f'{name}_{tag}', manifest)
        if config.output.plots:
            filename = os.path.join(outdir, 'plots', f'densities_{tag}.{config.output.plot_format}')
            manifest.add_artifact(plot_heatmaps(filename, [raw, electron, proton],
                                                ['relative', 'electron (coarse-grained)',
                                                 'proton (coarse-grained)']))
        field = reference.sample_field_plane(packet, t, grid)
        try:
            reduced = reference.reduce_field(field, com, 'electron', params)
        except GridError as err:
            logger.warning(f'reduced electron wave function skipped at t={t:.6g}: {err}')
            continue
        gap = reference.reduced_density_gap(field, com, 'electron', params)
        manifest.add_invariant(InvariantCheck(f'reduced_density_gap_{tag}', gap, REDUCED_DENSITY_GAP,
                                              comparison='>='))
        if config.output.snapshots:
            write_snapshot_artifact(reduced.values, outdir, f'reduced_electron_{tag}', manifest)
