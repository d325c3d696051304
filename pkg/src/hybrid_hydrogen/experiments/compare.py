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

"""Exact two-body run against a 1-d hybrid run of the same scenario.

The hybrid proton starts at the two-body proton center with the two-body
proton momentum. Hybrid steps subdivide the two-body step so that the step
guard holds and both runs are sampled at the same times.
"""

import math
import os

import hybrid_hydrogen.experiments as hh_experiments
from hybrid_hydrogen import hybrid, oracle
from hybrid_hydrogen.experiments.baseconfiguration import require
from hybrid_hydrogen.experiments.hybrid import GRID_STEPS_PER_PERIOD, HybridConfiguration, check_record, softcore_state
from hybrid_hydrogen.experiments.oracle import check_record as check_oracle_record
from hybrid_hydrogen.experiments.oracle import derived_quantities, write_oracle_artifacts
from hybrid_hydrogen.experiments.report import render_rows
from hybrid_hydrogen.experiments.runner import write_record
from hybrid_hydrogen.utils.io import write_json
from hybrid_hydrogen.utils.logging import get_logger
from hybrid_hydrogen.utils.plotting import plot_time_series

logger = get_logger()

_experiment_name = 'compare'

# the report flags a discrepancy once the proton excursions differ by this factor
DISCREPANCY_RATIO = 10.0


@hh_experiments.register(name=_experiment_name, type='config')
class CompareConfiguration(HybridConfiguration):
    """Configuration of a comparison, the model lives in the oracle section"""

    def __init__(self):
        super(CompareConfiguration, self).__init__()
        self['hybrid.system'] = 'softcore'

    def validate(self):
        super(CompareConfiguration, self).validate()
        require(self.hybrid.system == 'softcore', 'hybrid.system', 'comparisons use the 1-d soft-core model')
        return self


def hybrid_counterpart(scenario, oracle_run, law, representation):
    """Hybrid scenario sampled at the times of an exact two-body run"""
    r_p0 = float(oracle_run['r_p'][0][0])
    p_p0 = float(oracle_run['p_p'][0][0])
    state = softcore_state(scenario, representation, r_p0, p_p0)
    period = hybrid.electron_period(state)
    # grid runs need period/GRID_STEPS_PER_PERIOD to hold the energy invariant
    guard = period / GRID_STEPS_PER_PERIOD if state.representation == 'grid' else hybrid.STEP_GUARD * period
    substeps = max(1, math.ceil(scenario.dt / guard - 1e-9))
    return hybrid.HybridScenario(initial=state, params=scenario.params, law=law, dt=scenario.dt / substeps,
                                 duration=scenario.steps * scenario.dt,
                                 stride=scenario.steps_per_sample * substeps, keep_densities=True)


@hh_experiments.register(name=_experiment_name, type='run')
def run(config, outdir, manifest):
    scenario = config.scenario()
    law = config.force_law()
    oracle_run = oracle.run_oracle(scenario)

    counterpart = hybrid_counterpart(scenario, oracle_run, law, config.representation())
    hybrid_run = hybrid.run_hybrid(counterpart)
    hybrid_run.meta['scenario_key'] = scenario.key()

    report = oracle.compare_with_hybrid(oracle_run, hybrid_run, discrepancy_ratio=DISCREPANCY_RATIO)
    ratio = report.metrics['proton_excursion_ratio']
    manifest.add_derived(**derived_quantities(oracle_run, scenario))
    manifest.add_derived(hybrid_dt=counterpart.dt, hybrid_steps=counterpart.steps, force_law=law.value,
                         representation=counterpart.initial.representation,
                         discrepancy_flagged=bool(ratio >= DISCREPANCY_RATIO or ratio <= 1.0 / DISCREPANCY_RATIO),
                         report_rows=report.rows, **{k: v for k, v in report.metrics.items()
                                                     if k != 'density_overlap'})
    check_oracle_record(oracle_run, scenario, manifest)
    check_record(hybrid_run, scenario.params, law, manifest)

    filename = os.path.join(outdir, 'report.json')
    write_json(filename, report.state_dict())
    manifest.add_artifact(filename)
    filename = os.path.join(outdir, 'report.md')
    with open(filename, 'w') as f:
        f.write(render_rows(report.rows))
    manifest.add_artifact(filename)
    logger.info('comparison verdicts: ' + ', '.join(f'{r["aspect"]}: {r["verdict"]}' for r in report.rows))

    write_oracle_artifacts(oracle_run, outdir, config, manifest)
    write_record(hybrid_run, outdir, 'hybrid', config, manifest)
    if config.output.plots:
        filename = os.path.join(outdir, 'plots', f'proton_comparison.{config.output.plot_format}')
        manifest.add_artifact(plot_time_series(filename, oracle_run['t'], {
            'full quantum <x_p>': oracle_run['r_p'][:, 0], 'hybrid x_p': hybrid_run['r_p'][:, 0]},
            ylabel='bohr', title='proton position'))
