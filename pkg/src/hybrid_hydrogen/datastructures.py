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
Helpers for nested dictionaries and the Configuration class, a typed store of
nested parameters that is read from JSON files, command line arguments and
key=value overrides.
"""

import argparse
import copy
import json
import math

from hybrid_hydrogen.exceptions import ConfigParseError, ConfigValidationError

# NOTE: no logging in here, the CLI reports configuration errors


def strbool(s):
    """Specify all strings we accept as boolean, raise error if not valid"""
    if isinstance(s, bool):
        return s
    if str(s).lower() in ['true', 't', '1', 'yes', 'y']:
        return True
    elif str(s).lower() in ['false', 'f', '0', 'no', 'n']:
        return False
    raise ValueError(f"Boolean expected, but received '{s}'")


def dict_put_nested(d, key, value, type=dict):
    """Put a (potentially nested) key 'a.b.c' into a dict-like, creating levels of `type`"""
    if '.' in key:
        k, rest = key.split('.', 1)
        if k not in d:
            d[k] = type()
        dict_put_nested(d[k], rest, value, type)
    else:
        d[key] = value
    return d


def dict_get_nested(d, key):
    """Get a (potentially nested) key from a dict-like."""
    if '.' in key:
        key, rest = key.split('.', 1)
        if key not in d:
            raise KeyError(key)
        return dict_get_nested(d[key], rest)
    if key not in d:
        raise KeyError(key)
    return d[key]


class Filter:
    """Keep only the listed (possibly nested) keys of a dictionary"""

    def __init__(self, keys: list, dict_type=dict):
        self.keys = keys
        self.dict_type = dict_type

    def __call__(self, sample):
        kept = self.dict_type()
        for key in self.keys:
            dict_put_nested(kept, key, dict_get_nested(sample, key), type=self.dict_type)
        return kept


def filter_state_keys(data, retain_keys: list = None):
    """Filter state dict keys from list, an empty or missing list keeps everything"""
    if retain_keys:
        return Filter(retain_keys)(data)
    return data


def _parse_literal(text: str):
    """Interpret a command line value as JSON, falling back to a plain string"""
    try:
        return json.loads(text)
    except ValueError:
        return text


class Configuration:
    """A nested, typed configuration.

    Parameters are declared with `add_param` using dotted names. The default
    value fixes the type that values read from files, overrides and command
    line arguments are coerced to. Lists are declared with a list default and
    coerced element-wise.

    Example:

        >>> c = Configuration()
        >>> c.add_param('packet.n_bar', 60.0, 'Mean principal quantum number')
        >>> c.add_param('hybrid.r_p0', [0.0, 0.0, 0.0], 'Initial proton position')
        >>> c.parse_json('scenario.json')
        >>> c.parse_overrides(['packet.n_bar=30'])
        >>> c.packet.n_bar
        30.0

    Keys that were not declared are rejected when parsing a file or an
    override, so that typos surface as errors instead of silently using
    defaults.
    """

    _internal = ('_dict', '_name', '_parent', '_typeinfo', '_special', '_help')

    def __init__(self, name=None, parent=None):
        self._name = name
        self._parent = parent
        self._dict = {}
        self._typeinfo = {}
        self._special = {}
        self._help = {}

    def add_param(self, name: str, default, help: str, special: str = None):
        """Declare a known parameter.

        Args:
            name(str): possibly dotted name, e.g. 'oracle.points'
            default: default value, its type is used for coercion
            help(str): description shown on the command line
            special(str): None, or 'list' to force list handling
        """
        if '.' in name:
            sub, rest = name.split('.', 1)
            if sub not in self._dict:
                self._dict[sub] = Configuration(name=sub, parent=self)
                self._typeinfo[sub] = Configuration
                self._special[sub] = None
                self._help[sub] = 'Sub-Configuration'
            elif not isinstance(self._dict[sub], Configuration):
                raise ConfigParseError(f'"{sub}" is a parameter and cannot hold "{rest}"')
            self._dict[sub].add_param(rest, default, help, special)
            return

        self._dict[name] = copy.deepcopy(default)
        self._typeinfo[name] = type(default)
        self._special[name] = special
        self._help[name] = help
        if isinstance(default, (list, tuple)):
            self._dict[name] = list(default)
            self._typeinfo[name] = float if len(default) == 0 else type(default[0])
            self._special[name] = 'list'

    @property
    def prefix(self):
        """Dotted path of this configuration inside its root"""
        names = []
        node = self
        while node is not None and node._name:
            names.append(node._name)
            node = node._parent
        return '.'.join(reversed(names))

    def _field(self, key):
        return f'{self.prefix}.{key}' if self.prefix else key

    def _coerce_type(self, key, value):
        """Coerce value to the declared type of key.

        Raises:
            ConfigValidationError: the value cannot represent the declared type
        """
        if key not in self._typeinfo:
            return value

        target = self._typeinfo[key]

        def __coerce(v):
            if target == bool:
                return strbool(v)
            if target == int:
                if isinstance(v, bool):
                    raise ValueError('boolean given')
                if isinstance(v, float):
                    if not (math.isfinite(v) and v.is_integer()):
                        raise ValueError(f'{v} is not an integer')
                    return int(v)
                return int(v)
            if target == float:
                if isinstance(v, bool):
                    raise ValueError('boolean given')
                return float(v)
            if target == str:
                if not isinstance(v, str):
                    raise ValueError(f'{v!r} is not a string')
                return v
            return target(v)

        try:
            if self._special[key] == 'list':
                if isinstance(value, str):
                    value = [v.strip() for v in value.split(',') if v.strip()]
                if not isinstance(value, (list, tuple)):
                    raise ValueError(f'list expected, got {value!r}')
                return [__coerce(v) for v in value]
            return __coerce(value)
        except (TypeError, ValueError) as err:
            raise ConfigValidationError(self._field(key), f'expected {target.__name__}: {err}')

    def __getattr__(self, key):
        if key in Configuration._internal:
            raise AttributeError(key)
        try:
            return self._dict[key]
        except KeyError:
            raise AttributeError(key)

    def __setattr__(self, key, value):
        if key in Configuration._internal:
            super(Configuration, self).__setattr__(key, value)
        else:
            self[key] = value

    def __getitem__(self, key):
        return dict_get_nested(self._dict, key)

    def __setitem__(self, key, value):
        """Set a (dotted) value, creating unnamed sub-configurations on the fly"""
        if '.' in key:
            sub, rest = key.split('.', 1)
            if sub not in self._dict:
                self._dict[sub] = Configuration(name=sub, parent=self)
            elif not isinstance(self._dict[sub], Configuration):
                raise ConfigParseError(f'"{self._field(sub)}" is a parameter, not a section')
            self._dict[sub][rest] = value
        else:
            self._dict[key] = self._coerce_type(key, value)

    def __len__(self):
        return len(self._dict)

    def __contains__(self, key):
        try:
            dict_get_nested(self._dict, key)
        except (KeyError, TypeError):
            return False
        return True

    def __iter__(self):
        yield from self._dict

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return self._dict.__repr__()

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default

    def known_keys(self):
        """Dotted names of all declared parameters"""
        keys = []
        for k, v in self._dict.items():
            if isinstance(v, Configuration):
                keys += [f'{k}.{sub}' for sub in v.known_keys()]
            elif k in self._typeinfo:
                keys.append(k)
        return keys

    def is_known(self, key):
        if '.' in key:
            sub, rest = key.split('.', 1)
            return isinstance(self._dict.get(sub), Configuration) and self._dict[sub].is_known(rest)
        return key in self._typeinfo and self._typeinfo[key] != Configuration

    def to_dict(self):
        """Nested plain dictionary of all values"""
        return {k: v.to_dict() if isinstance(v, Configuration) else copy.deepcopy(v) for k, v in self._dict.items()}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def parse_dict(self, d: dict, strict=True, path=None):
        """Update values from a nested dictionary.

        Args:
            d(dict): nested dictionary, e.g. loaded from JSON
            strict(bool): reject keys that were not declared with add_param
            path(str): source file, only used in error messages

        Raises:
            ConfigParseError: structure does not match the declared sections
            ConfigValidationError: a value has the wrong type
        """
        if not isinstance(d, dict):
            raise ConfigParseError(f'section "{self.prefix or "<root>"}" must be an object', path)
        for k, v in d.items():
            field = self._field(k)
            node = self._dict.get(k)
            if isinstance(node, Configuration):
                node.parse_dict(v, strict=strict, path=path)
            elif k in self._typeinfo:
                self[k] = v
            elif strict:
                raise ConfigParseError(f'unknown key "{field}"', path)
            else:
                self._dict[k] = copy.deepcopy(v)
        return self

    def parse_json(self, filename, strict=True):
        """Read a JSON configuration file.

        Raises:
            ConfigParseError: missing or malformed file, unknown keys
            ConfigValidationError: a value has the wrong type
        """
        try:
            with open(filename) as f:
                data = json.load(f)
        except OSError as err:
            raise ConfigParseError(f'cannot read configuration: {err.strerror}', filename)
        except ValueError as err:
            raise ConfigParseError(f'malformed JSON: {err}', filename)
        return self.parse_dict(data, strict=strict, path=filename)

    def parse_overrides(self, overrides):
        """Apply 'dotted.key=value' strings, values are read as JSON where possible"""
        for item in overrides or []:
            if '=' not in item:
                raise ConfigParseError(f'override "{item}" is not of the form key=value')
            key, text = item.split('=', 1)
            key = key.strip()
            if not self.is_known(key):
                raise ConfigParseError(f'unknown key "{key}" in override')
            self[key] = _parse_literal(text.strip())
        return self

    def get_argparser(self):
        """ArgumentParser (without help) exposing every parameter as --dotted.key"""
        parser = argparse.ArgumentParser(add_help=False)
        for key in self.known_keys():
            section, _, leaf = key.rpartition('.')
            node = self[section] if section else self
            parser.add_argument(f'--{key}', type=_parse_literal, dest=key, metavar='VALUE',
                                help=node._help[leaf])
        return parser

    def parse_args(self, argv=None):
        """Update known parameters from command line arguments, returns unparsed arguments"""
        args, rest = self.get_argparser().parse_known_args(argv)
        for key, value in vars(args).items():
            if value is not None:
                self[key] = value
        return rest

    def right_merge(self, right):
        """Overwrite values with those of right, adding keys missing on the left"""
        for k in right:
            if isinstance(right[k], Configuration):
                if k in self._dict and isinstance(self._dict[k], Configuration):
                    self._dict[k].right_merge(right[k])
                else:
                    self._dict[k] = copy.deepcopy(right[k])
                    self._dict[k]._parent = self
            else:
                self[k] = right[k]
        return self
