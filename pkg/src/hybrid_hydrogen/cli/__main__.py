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

"""Command line interface of hybrid_hydrogen.

Example:

    $ python -m hybrid_hydrogen.cli run config/examples/hybrid_adiabatic.json --out runs/adiabatic
    $ python -m hybrid_hydrogen.cli validate config/examples/oracle.json --override oracle.points=256
    $ python -m hybrid_hydrogen.cli report runs/adiabatic runs/compare

Exit status is 0 on success, 1 if a run aborted with an error and 2 if a run
finished with failed invariants.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANTS = 2


def get_cmd_argparser():
    parser = argparse.ArgumentParser(prog='hhlab', description='Hybrid classical-quantum hydrogen experiments')

    parser.add_argument(
        '--logging-level',
        type=str,
        default='INFO',
        dest='logging_level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        help='Define the logging level of the application')

    parser.add_argument(
        '--list-experiments',
        action='store_true',
        dest='list_experiments',
        help='Print list of experiment kinds and exit')

    subparsers = parser.add_subparsers(dest='command')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--override',
        action='append',
        default=[],
        metavar='KEY=VALUE',
        help='Override a configuration value, e.g. packet.n_bar=40. Can be repeated')
    common.add_argument(
        '--stride',
        type=int,
        default=None,
        help='Sampling stride, shorthand for --override experiment.stride=N')

    run_parser = subparsers.add_parser('run', parents=[common], help='Run one or more experiments')
    run_parser.add_argument('configs', nargs='+', help='JSON configuration files')
    run_parser.add_argument(
        '--out',
        default=None,
        help='Output directory. With several configurations one subdirectory per configuration is used')
    run_parser.add_argument(
        '--jobs',
        type=int,
        default=1,
        help='Number of configurations run concurrently')

    validate_parser = subparsers.add_parser('validate', parents=[common],
                                            help='Validate a configuration and print it with defaults')
    validate_parser.add_argument('config', help='JSON configuration file')

    report_parser = subparsers.add_parser('report', help='Merge run manifests into one comparison table')
    report_parser.add_argument('run_dirs', nargs='+', help='Run directories containing a manifest.json')
    report_parser.add_argument('--out', default=None, help='Write the table to this file instead of stdout')

    return parser


def _overrides(args):
    overrides = list(args.override)
    if args.stride is not None:
        overrides.append(f'experiment.stride={args.stride}')
    return overrides


def _run_directory(configfile, out, several):
    if out is None or not several:
        return out
    name = os.path.splitext(os.path.basename(configfile))[0]
    return os.path.join(out, name)


def run_one(configfile, overrides, out):
    """Run a single configuration, returns its exit status"""
    from hybrid_hydrogen.exceptions import HybridHydrogenError
    from hybrid_hydrogen.experiments.runner import load_scenario, run_experiment
    from hybrid_hydrogen.utils.logging import get_logger

    logger = get_logger()
    try:
        config = load_scenario(configfile, overrides)
        manifest = run_experiment(config, out)
    except HybridHydrogenError as err:
        logger.error(f'{configfile}: {type(err).__name__}: {err}')
        return EXIT_ERROR
    except Exception as err:
        logger.exception(f'{configfile}: unexpected {type(err).__name__}: {err}')
        return EXIT_ERROR
    return EXIT_OK if manifest.passed else EXIT_INVARIANTS


def cmd_run(args):
    overrides = _overrides(args)
    several = len(args.configs) > 1
    jobs = [(c, overrides, _run_directory(c, args.out, several)) for c in args.configs]
    if args.jobs > 1 and several:
        with ProcessPoolExecutor(max_workers=args.jobs) as executor:
            statuses = list(executor.map(run_one, *zip(*jobs)))
    else:
        statuses = [run_one(*job) for job in jobs]
    return max(statuses)


def cmd_validate(args):
    from hybrid_hydrogen.exceptions import ConfigurationError
    from hybrid_hydrogen.experiments.runner import load_scenario
    from hybrid_hydrogen.utils.logging import get_logger

    try:
        config = load_scenario(args.config, _overrides(args))
    except ConfigurationError as err:
        get_logger().error(f'{type(err).__name__}: {err}')
        return EXIT_ERROR
    print(config.to_json())
    return EXIT_OK


def cmd_report(args):
    from hybrid_hydrogen.experiments.report import load_manifests, merge_manifests
    from hybrid_hydrogen.utils.logging import get_logger

    try:
        manifests = load_manifests(args.run_dirs)
    except (OSError, ValueError) as err:
        get_logger().error(str(err))
        return EXIT_ERROR
    table = merge_manifests(manifests)
    if args.out:
        with open(args.out, 'w') as f:
            f.write(table)
    else:
        print(table)
    if not all(m.get('complete') for _, m in manifests):
        return EXIT_ERROR
    return EXIT_OK if all(m.get('passed') for _, m in manifests) else EXIT_INVARIANTS


COMMANDS = {'run': cmd_run, 'validate': cmd_validate, 'report': cmd_report}


def main(argv=None):
    parser = get_cmd_argparser()
    args = parser.parse_args(args=argv)

    from hybrid_hydrogen.utils.logging import configure_logger
    configure_logger(args.logging_level)

    if args.list_experiments:
        from hybrid_hydrogen.experiments import get_registered
        print('List of experiment kinds:')
        for kind in sorted(get_registered()):
            print(f'   {kind}')
        return EXIT_OK

    if args.command is None:
        parser.print_help()
        return EXIT_ERROR
    return COMMANDS[args.command](args)


if __name__ == '__main__':
    sys.exit(main())
