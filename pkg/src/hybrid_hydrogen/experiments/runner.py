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

"""Loading scenarios and running experiments with manifest bookkeeping."""

import json
import os

from hybrid_hydrogen.exceptions import ConfigParseError
from hybrid_hydrogen.experiments import get_registered
from hybrid_hydrogen.experiments.baseconfiguration import EXPERIMENT_KINDS
from hybrid_hydrogen.interfaces import RunManifest
from hybrid_hydrogen.math.conversions import unit_system
from hybrid_hydrogen.utils.io import expandpath, try_makedirs, write_csv, write_json, write_snapshot
from hybrid_hydrogen.utils.logging import get_logger
from hybrid_hydrogen.utils.plotting import plot_trajectory
from hybrid_hydrogen.version import __version__

logger = get_logger()

MANIFEST_NAME = 'manifest.json'


def determine_kind(data: dict, overrides=None, path=None):
    """Experiment kind from a parsed configuration, an 'experiment.kind=...' override wins"""
    for item in overrides or []:
        key, _, value = item.partition('=')
        if key.strip() == 'experiment.kind':
            return value.strip().strip('"')
    if not isinstance(data, dict):
        raise ConfigParseError('configuration must be a JSON object', path)
    kind = data.get('experiment', {}).get('kind') if isinstance(data.get('experiment'), dict) else None
    if kind is None:
        raise ConfigParseError('experiment.kind missing from configuration', path)
    return kind


def make_configuration(kind: str):
    """Fresh configuration with all defaults of an experiment kind"""
    if kind not in EXPERIMENT_KINDS:
        raise ConfigParseError(f'unknown experiment kind "{kind}", expected one of {EXPERIMENT_KINDS}')
    config = get_registered(kind)['config']()
    config.experiment.kind = kind
    return config


def load_scenario(path, overrides=None):
    """Read, complete and validate a JSON scenario.

    Args:
        path(str): JSON file
        overrides(list): 'dotted.key=value' strings applied after the file

    Returns:
        Validated configuration of the registered kind, defaults filled in

    Raises:
        ConfigParseError: unreadable or malformed file, unknown keys
        ConfigValidationError: values outside the validity range, naming the field
    """
    path = expandpath(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as err:
        raise ConfigParseError(f'cannot read configuration: {err.strerror}', path)
    except ValueError as err:
        raise ConfigParseError(f'malformed JSON: {err}', path)

    config = make_configuration(determine_kind(data, overrides, path))
    config.parse_dict(data, path=path)
    config.parse_overrides(overrides)
    return config.validate()


def scenario_from_dict(data: dict, overrides=None):
    """As load_scenario, for an already parsed dictionary"""
    config = make_configuration(determine_kind(data, overrides))
    config.parse_dict(data)
    config.parse_overrides(overrides)
    return config.validate()


def output_directory(config, out=None):
    if out:
        return expandpath(out)
    if config.output.directory:
        return expandpath(config.output.directory)
    return os.path.join('runs', config.experiment.kind)


def write_record(record, outdir, name, config, manifest):
    """Trajectory CSV and the standard plots of a record"""
    filename = os.path.join(outdir, f'{name}.csv')
    write_csv(filename, record.columns())
    manifest.add_artifact(filename)
    if config.output.plots:
        plotdir = os.path.join(outdir, 'plots')
        try_makedirs(plotdir)
        for plot in plot_trajectory(record, plotdir, config.output.plot_format, prefix=f'{name}_'):
            manifest.add_artifact(plot)


def write_snapshot_artifact(array, outdir, name, manifest):
    snapdir = os.path.join(outdir, 'snapshots')
    try_makedirs(snapdir)
    filename = os.path.join(snapdir, f'{name}.hhsnap')
    write_snapshot(filename, array)
    manifest.add_artifact(filename)


def run_experiment(config, out=None):
    """Run a validated configuration and write its artifacts and manifest.

    The manifest is written in any case. A run aborted by an error leaves a
    manifest with complete=False and the error message.

    Returns:
        RunManifest
    """
    kind = config.experiment.kind
    outdir = output_directory(config, out)
    os.makedirs(outdir, exist_ok=True)
    manifest = RunManifest(config=config.to_dict(), version=__version__, unit_system=unit_system())
    logger.info(f'running {kind} experiment into {outdir}')
    try:
        get_registered(kind)['run'](config, outdir, manifest)
        manifest.complete = True
    except Exception as err:
        manifest.error = f'{type(err).__name__}: {err}'
        raise
    finally:
        write_json(os.path.join(outdir, MANIFEST_NAME), manifest.state_dict())
    failed = [c.name for c in manifest.invariants if not c.passed]
    if failed:
        logger.warning(f'{kind} experiment finished with failed invariants: {", ".join(failed)}')
    else:
        logger.info(f'{kind} experiment finished, {len(manifest.invariants)} invariants passed')
    return manifest
