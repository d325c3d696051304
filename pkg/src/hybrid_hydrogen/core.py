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

"""Physical parameters shared by all modules.

Everything is expressed in Hartree atomic units, i.e. hbar = m_e = a_B = e = 1.
Only the proton/electron mass ratio is a free parameter. Note that the
frequently quoted factor of "about 1837" between electron and proton density
widths corresponds to M/m_e = 1 + m_p/m_e, not to m_p/m_e itself.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from hybrid_hydrogen.exceptions import PacketRepresentationError

# CODATA proton-electron mass ratio
PROTON_ELECTRON_MASS_RATIO = 1836.15267343


@dataclass(frozen=True)
class AtomParams:
    """Masses of the two-body system and the unit system.

    Use make_params to construct consistent instances.
    """
    m_e: float
    m_p: float
    M: float
    mu: float
    a_B: float = 1.0
    hbar: float = 1.0

    @property
    def mass_ratio(self):
        return self.m_p / self.m_e

    def state_dict(self):
        return {
            'm_e': self.m_e, 'm_p': self.m_p, 'M': self.M, 'mu': self.mu,
            'a_B': self.a_B, 'hbar': self.hbar,
        }


def make_params(mass_ratio: float = PROTON_ELECTRON_MASS_RATIO) -> AtomParams:
    """Build atom parameters for a given proton/electron mass ratio.

    Args:
        mass_ratio(float): m_p / m_e. Scaled-down toy ratios are allowed.

    Returns:
        AtomParams with m_e = 1, m_p = mass_ratio and derived M, mu.

    Raises:
        ValueError: non-positive or non-finite ratio.
    """
    try:
        mass_ratio = float(mass_ratio)
    except (TypeError, ValueError):
        raise ValueError(f'mass ratio must be a number, got {mass_ratio!r}')
    if not math.isfinite(mass_ratio) or mass_ratio <= 0.0:
        raise ValueError(f'mass ratio must be positive and finite, got {mass_ratio}')

    m_e = 1.0
    m_p = mass_ratio
    M = m_e + m_p
    return AtomParams(m_e=m_e, m_p=m_p, M=M, mu=m_e * m_p / M)


def default_window(n_bar: float, sigma_n: float) -> Tuple[int, int]:
    """Default principal quantum number window [max(1, ceil(n_bar - 8 sigma)), floor(n_bar + 8 sigma)]"""
    n_lo = max(1, math.ceil(n_bar - 8.0 * sigma_n))
    n_hi = math.floor(n_bar + 8.0 * sigma_n)
    if n_hi < n_lo:
        # vanishing width around a non-integer mean
        n_lo = n_hi = max(1, int(round(n_bar)))
    return n_lo, n_hi


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian weights over circular states and the center-of-mass width.

    Attributes:
        n_bar: mean principal quantum number
        sigma_n: width of the Gaussian weight (in n)
        window: inclusive range (n_lo, n_hi)
        sigma_com: width of the center-of-mass Gaussian (bohr)
    """
    n_bar: float = 60.0
    sigma_n: float = 0.8
    window: Optional[Tuple[int, int]] = None
    sigma_com: float = 10.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma_n) and self.sigma_n > 0):
            raise PacketRepresentationError(f'sigma_n must be positive, got {self.sigma_n}')
        if not (math.isfinite(self.sigma_com) and self.sigma_com > 0):
            raise PacketRepresentationError(f'sigma_com must be positive, got {self.sigma_com}')
        if not (math.isfinite(self.n_bar) and self.n_bar >= 1):
            raise PacketRepresentationError(f'n_bar must be >= 1, got {self.n_bar}')

        if self.window is None:
            window = default_window(self.n_bar, self.sigma_n)
        else:
            window = (int(self.window[0]), int(self.window[1]))
        # frozen dataclass
        object.__setattr__(self, 'window', window)

        n_lo, n_hi = window
        if n_lo < 1:
            raise PacketRepresentationError(f'window must start at n >= 1, got {n_lo}')
        if n_hi < n_lo:
            raise PacketRepresentationError(f'empty window {window}')
        if self.window[0] != self.window[1] and not (n_lo <= self.n_bar <= n_hi):
            raise PacketRepresentationError(f'n_bar={self.n_bar} outside window {window}')

    @property
    def n_lo(self):
        return self.window[0]

    @property
    def n_hi(self):
        return self.window[1]

    def state_dict(self):
        return {
            'n_bar': self.n_bar, 'sigma_n': self.sigma_n,
            'window': list(self.window), 'sigma_com': self.sigma_com,
        }
