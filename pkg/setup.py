#!/usr/bin/env python3

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
import setuptools
from setuptools import find_packages

__this_dir = os.path.dirname(os.path.abspath(__file__))


# Specify version information from file
def get_version():
    with open(os.path.join(__this_dir, 'VERSION')) as version_file:
        return version_file.read().strip()


VERSION = get_version()
PKGNAME = 'hybrid_hydrogen'


# Generate the version file
def write_version_file():
    file_content = """__version__ = '%s'\n""" % (VERSION)
    path = os.path.join(__this_dir, 'src', PKGNAME, 'version.py')
    with open(path, 'w') as f:
        f.write(file_content)


write_version_file()


def requirements():
    # runtime requirements only, linting and documentation tools are listed after a blank line
    with open(os.path.join(__this_dir, 'requirements.txt')) as f:
        lines = [line.strip() for line in f.read().split('\n\n')[0].splitlines()]
    return [line for line in lines if line and not line.startswith('#')]


def readme():
    with open(os.path.join(__this_dir, 'README.md')) as f:
        return f.read()


setuptools.setup(
    name='hybrid_hydrogen',
    packages=find_packages(
        where='src',
        include=['hybrid_hydrogen*', ]
    ),
    package_dir={'': 'src'},
    version=VERSION,
    description='Hybrid classical-quantum dynamics of the hydrogen atom against full quantum references',
    long_description=readme(),
    long_description_content_type='text/markdown',
    python_requires='>=3.8, <4',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    install_requires=requirements(),
    scripts=['scripts/hhlab'],
    include_package_data=True,
    zip_safe=False,
)
