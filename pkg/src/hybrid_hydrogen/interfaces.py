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

"""
Result containers shared by the propagators, the experiment runners and the
writers. Every container exposes state_dict() returning plain python types.
"""

import numpy as np

from hybrid_hydrogen.datastructures import filter_state_keys
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()


# series of a trajectory with their units, vector-valued series expand to one column per component
TRAJECTORY_SERIES = [
    ('t', 'a.u. time'),
    ('r_p', 'bohr'),
    ('p_p', 'a.u. momentum'),
    ('r_e', 'bohr'),
    ('p_e', 'a.u. momentum'),
    ('P', 'a.u. momentum'),
    ('H', 'hartree'),
    ('norm', '1'),
]

_AXES = 'xyz'
_VECTOR_SERIES = ('r_p', 'p_p', 'r_e', 'p_e', 'P')


class TrajectoryRecord:
    """Sampled time series of a hybrid or two-body run.

    Vector series (r_p, p_p, r_e, p_e, P) have `dim` components. Adiabatic
    populations are stored per sample (possibly zero-width), additional scalar
    series (e.g. purity) go into `extras`. Electron densities on a fixed grid
    can be kept for comparisons, they are not part of the tabular output.
    """

    def __init__(self, dim: int, meta: dict = None):
        if dim not in (1, 2, 3):
            raise ValueError(f'trajectory dimension must be 1, 2 or 3, got {dim}')
        self.dim = dim
        self.meta = dict(meta or {})
        self._series = {name: [] for name, _ in TRAJECTORY_SERIES}
        self.populations = []
        self.extras = {}
        self.densities = []
        self.density_grid = None
        self.final_state = None

    def append(self, t, r_p, p_p, r_e, p_e, P, H, norm, populations=(), density=None, **extras):
        """Append one sample.

        Raises:
            ValueError: non-increasing time, wrong vector shapes or inconsistent extras
        """
        if len(self) and not t > self._series['t'][-1]:
            raise ValueError(f'trajectory times must increase strictly, got {t} after {self._series["t"][-1]}')
        sample = {'t': float(t), 'H': float(H), 'norm': float(norm)}
        for name, value in (('r_p', r_p), ('p_p', p_p), ('r_e', r_e), ('p_e', p_e), ('P', P)):
            value = np.asarray(value, dtype=float).reshape(-1)
            if value.shape != (self.dim,):
                raise ValueError(f'{name} must have {self.dim} components, got shape {value.shape}')
            sample[name] = value
        populations = np.asarray(populations, dtype=float).reshape(-1)
        if self.populations and populations.shape != self.populations[0].shape:
            raise ValueError('number of populations changed during the run')
        if len(self) and set(extras) != set(self.extras):
            raise ValueError(f'extra series {sorted(extras)} differ from {sorted(self.extras)}')

        for name, value in sample.items():
            self._series[name].append(value)
        self.populations.append(populations)
        for name, value in extras.items():
            self.extras.setdefault(name, []).append(float(value))
        if density is not None:
            self.densities.append(np.asarray(density, dtype=float))

    def __len__(self):
        return len(self._series['t'])

    def __getitem__(self, name):
        """Series as array, e.g. record['r_p'] has shape (len, dim)"""
        if name in self._series:
            if not self._series[name] and name in _VECTOR_SERIES:
                return np.zeros((0, self.dim))
            return np.asarray(self._series[name])
        if name == 'populations':
            return np.asarray(self.populations)
        if name in self.extras:
            return np.asarray(self.extras[name])
        raise KeyError(f'unknown series "{name}"')

    def validate(self):
        """Check strictly increasing times and equal series lengths"""
        lengths = {name: len(values) for name, values in self._series.items()}
        lengths['populations'] = len(self.populations)
        lengths.update({name: len(values) for name, values in self.extras.items()})
        if self.densities:
            lengths['densities'] = len(self.densities)
        if len(set(lengths.values())) > 1:
            raise ValueError(f'series lengths differ: {lengths}')
        t = self['t']
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise ValueError('trajectory times are not strictly increasing')

    def columns(self):
        """Ordered (column name, unit, values) triples for tabular output"""
        columns = []
        for name, unit in TRAJECTORY_SERIES:
            values = self[name]
            if values.ndim == 1:
                columns.append((name, unit, values))
                continue
            for i in range(self.dim):
                columns.append((f'{name}_{_AXES[i]}', unit, values[:, i]))
        populations = self['populations']
        if populations.ndim == 2:
            offset = int(self.meta.get('population_offset', 0))
            for j in range(populations.shape[1]):
                columns.append((f'pop_{j + offset}', '1', populations[:, j]))
        for name in sorted(self.extras):
            columns.append((name, self.meta.get('extra_units', {}).get(name, '1'), self[name]))
        return columns

    def state_dict(self, retain_keys: list = None):
        data = {
            'dim': self.dim,
            'meta': self.meta,
            'series': {name: self[name].tolist() for name, _ in TRAJECTORY_SERIES},
            'populations': self['populations'].tolist(),
            'extras': {name: list(values) for name, values in self.extras.items()},
        }
        return filter_state_keys(data, retain_keys)


class ComparisonReport:
    """Side by side verdicts of a two-body run and a hybrid run.

    Rows mirror three aspects: electron dynamics, proton dynamics and momentum
    conservation. Each row carries the measured numbers and a verdict string.
    """

    def __init__(self, metrics: dict, rows: list, meta: dict = None):
        self.metrics = dict(metrics)
        self.rows = list(rows)
        self.meta = dict(meta or {})

    def row(self, aspect):
        for r in self.rows:
            if r['aspect'] == aspect:
                return r
        raise KeyError(f'no row for aspect "{aspect}"')

    def state_dict(self, retain_keys: list = None):
        data = {'metrics': self.metrics, 'rows': self.rows, 'meta': self.meta}
        return filter_state_keys(data, retain_keys)


class InvariantCheck:
    """Outcome of one invariant evaluated during a run"""

    def __init__(self, name, value, tolerance, passed=None, comparison='<='):
        self.name = name
        self.value = float(value)
        self.tolerance = float(tolerance)
        if passed is None:
            passed = self.value <= self.tolerance if comparison == '<=' else self.value >= self.tolerance
        self.passed = bool(passed)
        self.comparison = comparison

    def state_dict(self):
        return {
            'name': self.name, 'passed': self.passed, 'value': self.value,
            'tolerance': self.tolerance, 'comparison': self.comparison,
        }


class RunManifest:
    """Everything needed to reproduce and judge one run"""

    def __init__(self, config: dict, version: str, unit_system: dict):
        self.config = config
        self.version = version
        self.unit_system = unit_system
        self.derived = dict()
        self.invariants = list()
        self.artifacts = list()
        self.complete = False
        self.error = None

    def add_derived(self, **quantities):
        self.derived.update(quantities)

    def add_invariant(self, check: InvariantCheck):
        level = 'debug' if check.passed else 'warning'
        getattr(logger, level)(f'invariant {check.name}: value {check.value:.6g}, '
                               f'tolerance {check.tolerance:.6g}, passed {check.passed}')
        self.invariants.append(check)

    def add_artifact(self, path):
        self.artifacts.append(str(path))

    @property
    def passed(self):
        return all(c.passed for c in self.invariants)

    def state_dict(self, retain_keys: list = None):
        data = {
            'config': self.config,
            'version': self.version,
            'unit_system': self.unit_system,
            'derived': self.derived,
            'invariants': [c.state_dict() for c in self.invariants],
            'artifacts': self.artifacts,
            'passed': self.passed,
            'complete': self.complete,
            'error': self.error,
        }
        return filter_state_keys(data, retain_keys)
