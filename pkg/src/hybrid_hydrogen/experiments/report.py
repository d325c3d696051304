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

"""Markdown tables of comparison rows and of merged run manifests."""

import os

from hybrid_hydrogen.experiments.runner import MANIFEST_NAME
from hybrid_hydrogen.utils.io import read_json

# derived quantities listed per run when merging manifests
SUMMARY_KEYS = (
    't_rev_over_t_kepler', 't_spread_over_t_kepler', 'proton_displacement', 'total_momentum_excursion',
    'proton_excursion', 'purity_min', 'proton_excursion_ratio',
)


def _cell(value):
    if value is None:
        return '-'
    if isinstance(value, float):
        return f'{value:.6g}'
    return str(value).replace('|', '/')


def render_rows(rows):
    """Verdict table with one row per aspect (electron, proton, momentum)"""
    lines = ['| aspect | full quantum | hybrid | measure | verdict |', '|---|---|---|---|---|']
    for row in rows:
        lines.append('| ' + ' | '.join(_cell(row.get(k)) for k in ('aspect', 'oracle', 'hybrid', 'measure', 'verdict'))
                     + ' |')
    return '\n'.join(lines) + '\n'


def load_manifests(run_dirs):
    """(run directory, manifest dict) pairs

    Raises:
        FileNotFoundError: a directory without manifest
    """
    manifests = []
    for run_dir in run_dirs:
        filename = os.path.join(run_dir, MANIFEST_NAME)
        if not os.path.exists(filename):
            raise FileNotFoundError(f'no {MANIFEST_NAME} in {run_dir}')
        manifests.append((run_dir, read_json(filename)))
    return manifests


def merge_manifests(manifests):
    """One summary table over runs plus the verdict tables of comparison runs"""
    header = ['run', 'kind', 'complete', 'passed'] + list(SUMMARY_KEYS)
    lines = ['| ' + ' | '.join(header) + ' |', '|' + '---|' * len(header)]
    sections = []
    for run_dir, manifest in manifests:
        derived = manifest.get('derived', {})
        kind = manifest.get('config', {}).get('experiment', {}).get('kind')
        cells = [run_dir, kind, manifest.get('complete'), manifest.get('passed')]
        cells += [derived.get(k) for k in SUMMARY_KEYS]
        lines.append('| ' + ' | '.join(_cell(c) for c in cells) + ' |')
        failed = [c['name'] for c in manifest.get('invariants', []) if not c['passed']]
        if failed:
            sections.append(f'Failed invariants in {run_dir}: {", ".join(failed)}\n')
        if derived.get('report_rows'):
            sections.append(f'### {run_dir}\n\n' + render_rows(derived['report_rows']))
    return '\n'.join(lines) + '\n\n' + '\n'.join(sections)
