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

"""Exceptions raised throughout hybrid_hydrogen.

Every class derives from HybridHydrogenError and, where it makes sense, also
from the builtin exception a caller would naturally catch (ValueError for bad
arguments, RuntimeError for failures during a computation).
"""


class HybridHydrogenError(Exception):
    """Base class of all package errors"""


class ConfigurationError(HybridHydrogenError):
    pass


class ConfigParseError(ConfigurationError):
    """Configuration file could not be read or has an unexpected structure"""

    def __init__(self, message, path=None):
        self.path = path
        if path is not None:
            message = f'{path}: {message}'
        super(ConfigParseError, self).__init__(message)


class ConfigValidationError(ConfigurationError, ValueError):
    """A configuration value is outside the validity range of its owner module"""

    def __init__(self, field, message):
        self.field = field
        super(ConfigValidationError, self).__init__(f'{field}: {message}')


class QuantumNumberError(HybridHydrogenError, ValueError):
    pass


class RangeError(HybridHydrogenError, ArithmeticError):
    """Evaluation outside the overflow-safe range of the basis functions"""


class PacketRepresentationError(HybridHydrogenError, ValueError):
    pass


class GridError(HybridHydrogenError, ValueError):
    pass


class RepresentationError(HybridHydrogenError, ValueError):
    pass


class StepSizeError(HybridHydrogenError, ValueError):
    pass


class QuadratureError(HybridHydrogenError, RuntimeError):
    pass


class BoundaryLeakError(HybridHydrogenError, RuntimeError):
    pass


class ConvergenceError(HybridHydrogenError, RuntimeError):
    pass


class ScenarioMismatchError(HybridHydrogenError, ValueError):
    pass


class InvariantError(HybridHydrogenError, RuntimeError):
    """An invariant checked during a run failed"""
