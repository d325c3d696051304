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

"""Exact two-body dynamics in one dimension per particle.

The field psi(x_e, x_p) lives on a square grid where both axes share the same
coordinates. Differences x_e - x_p then fall on a relative grid with the same
spacing and twice the number of points, which lets relative-motion states be
sampled onto the two-body grid without interpolation.

The interaction is the soft-core potential of hybrid_hydrogen.softcore. The
propagator is the second order split-operator scheme with a separable spectral
kinetic phase for electron (m_e) and proton (m_p).
"""

import math
from dataclasses import asdict, dataclass, replace
from typing import Tuple

import numpy as np
from scipy.linalg import svdvals

from hybrid_hydrogen import softcore
from hybrid_hydrogen.core import AtomParams, make_params
from hybrid_hydrogen.exceptions import BoundaryLeakError, GridError, ScenarioMismatchError
from hybrid_hydrogen.interfaces import ComparisonReport, TrajectoryRecord
from hybrid_hydrogen.math.grids import uniform_grid, wavenumbers
from hybrid_hydrogen.reference import ComState
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

INITIAL_STATES = ('superposition', 'displaced')
RELAXATION_METHODS = ('imaginary-time', 'fgh')
# largest fraction of spectral weight allowed in the upper half of the wavenumber range
SPECTRAL_TAIL_BUDGET = 1e-8


@dataclass(frozen=True)
class OracleScenario:
    """Two-body run definition.

    Attributes:
        mass_ratio: m_p / m_e
        softening: softening length s of the interaction
        half_width: grid half extent per axis
        points: grid points per axis
        dt: time step
        duration: total propagation time
        sigma0: initial center-of-mass width (density standard deviation)
        com_momentum: center-of-mass momentum K
        initial_state: 'superposition' of bound states or 'displaced' ground state
        weights: bound state weights of the superposition
        displacement: shift of the displaced ground state
        steps_per_sample: steps between recorded samples
        relaxation: bound state method, 'imaginary-time' or 'fgh'
        boundary_fraction: fraction of points per edge counted as boundary region
        boundary_budget: largest boundary density fraction before a run aborts
        track_purity: record the proton purity with every sample
    """
    mass_ratio: float = 100.0
    softening: float = softcore.DEFAULT_SOFTENING
    half_width: float = 40.0
    points: int = 512
    dt: float = 0.05
    duration: float = 200.0
    sigma0: float = 1.0
    com_momentum: float = 0.0
    initial_state: str = 'superposition'
    weights: Tuple[float, ...] = (1.0, 1.0)
    displacement: float = 5.0
    steps_per_sample: int = 20
    relaxation: str = 'imaginary-time'
    boundary_fraction: float = 0.05
    boundary_budget: float = 1e-6
    track_purity: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(float(w) for w in self.weights))

    @property
    def params(self) -> AtomParams:
        return make_params(self.mass_ratio)

    @property
    def spacing(self):
        return 2.0 * self.half_width / self.points

    @property
    def steps(self):
        return int(round(self.duration / self.dt))

    def grid(self):
        return uniform_grid(self.half_width, self.points)

    def relative_grid(self):
        """Grid of x_e - x_p, same spacing and twice the points"""
        return uniform_grid(2.0 * self.half_width, 2 * self.points)

    def validate(self):
        """Static checks of the grid and the run parameters.

        Raises:
            GridError: spacing coarser than s/4 or odd number of points
            ValueError: invalid run parameters
        """
        if self.softening <= 0:
            raise ValueError(f'softening must be positive, got {self.softening}')
        if self.points < 8 or self.points % 2:
            raise GridError(f'the two-body grid needs an even number of at least 8 points, got {self.points}')
        if self.spacing > 0.25 * self.softening * (1.0 + 1e-12):
            raise GridError(f'grid spacing {self.spacing:.6g} does not resolve the softening length '
                            f'{self.softening:g} (spacing must be <= s/4)')
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f'time step must be positive, got {self.dt}')
        if not (math.isfinite(self.duration) and self.duration >= 0):
            raise ValueError(f'duration must be non-negative, got {self.duration}')
        if self.sigma0 <= 0:
            raise ValueError(f'sigma0 must be positive, got {self.sigma0}')
        if self.initial_state not in INITIAL_STATES:
            raise ValueError(f'unknown initial state "{self.initial_state}", expected one of {INITIAL_STATES}')
        if self.relaxation not in RELAXATION_METHODS:
            raise ValueError(f'unknown relaxation "{self.relaxation}", expected one of {RELAXATION_METHODS}')
        if not self.weights or not any(self.weights):
            raise ValueError('at least one bound state weight must be nonzero')
        if int(self.steps_per_sample) != self.steps_per_sample or self.steps_per_sample < 1:
            raise ValueError(f'steps_per_sample must be a positive integer, got {self.steps_per_sample}')
        make_params(self.mass_ratio)
        return self

    def key(self):
        """Parameters two runs must share to be comparable"""
        return {
            'mass_ratio': self.mass_ratio, 'softening': self.softening, 'half_width': self.half_width,
            'points': self.points, 'initial_state': self.initial_state, 'weights': list(self.weights),
            'displacement': self.displacement, 'sigma0': self.sigma0, 'com_momentum': self.com_momentum,
        }

    def state_dict(self):
        data = asdict(self)
        data['weights'] = list(self.weights)
        return data


@dataclass(frozen=True)
class TwoBodyField:
    """Two-body amplitudes psi[i, j] = psi(x_e = x[i], x_p = x[j], t).

    The interaction is coupling times the soft-core potential, 0 propagates free particles.
    """
    psi: np.ndarray
    x: np.ndarray
    params: AtomParams
    softening: float
    t: float = 0.0
    coupling: float = 1.0

    @property
    def spacing(self):
        return float(self.x[1] - self.x[0])

    @property
    def points(self):
        return len(self.x)

    def norm(self):
        return float(np.sum(np.abs(self.psi) ** 2) * self.spacing ** 2)


def relative_states(scenario: OracleScenario) -> softcore.EigenBasis:
    """Bound states of the relative motion (reduced mass) on the relative grid"""
    count = max(1, len(scenario.weights)) if scenario.initial_state == 'superposition' else 1
    kwargs = {}
    if scenario.relaxation == 'imaginary-time':
        kwargs = {'dtau': 0.02, 'tolerance': 1e-10}
    return softcore.eigenbasis(scenario.relative_grid(), scenario.params.mu, scenario.softening, count,
                               method=scenario.relaxation, **kwargs)


def relative_wavefunction(scenario: OracleScenario, basis: softcore.EigenBasis = None):
    """Initial relative state phi(u) on scenario.relative_grid()"""
    if basis is None:
        basis = relative_states(scenario)
    if scenario.initial_state == 'superposition':
        weights = np.asarray(scenario.weights, dtype=float)
        phi = basis.superpose(weights / np.linalg.norm(weights))
    else:
        phi = softcore.translate(basis.states[0], basis.spacing, scenario.displacement)
    return phi.astype(complex)


def _com_state(scenario: OracleScenario, t=0.0):
    return ComState(sigma0=scenario.sigma0, time=t, mode='free-spreading',
                    drift_momentum=(scenario.com_momentum, 0.0, 0.0))


def _center_of_mass(x, params: AtomParams):
    return (params.m_e * x[:, None] + params.m_p * x[None, :]) / params.M


def _relative_index(points):
    i = np.arange(points)
    return i[:, None] - i[None, :] + points


def combine(scenario: OracleScenario, phi, com: ComState) -> np.ndarray:
    """psi(x_e, x_p) = phi(x_e - x_p) chi(R) on the two-body grid"""
    params = scenario.params
    x = scenario.grid()
    R = _center_of_mass(x, params)
    chi = com.amplitude(R[..., None], params.M, params.hbar)
    return np.asarray(phi)[_relative_index(len(x))] * chi


def initial_field(scenario: OracleScenario, basis: softcore.EigenBasis = None) -> TwoBodyField:
    """Relative bound state times a center-of-mass Gaussian, normalized on the grid.

    A nonzero com_momentum K multiplies the field by exp(i K R), i.e. boosts the
    whole atom with total momentum K.
    """
    scenario.validate()
    psi = combine(scenario, relative_wavefunction(scenario, basis), _com_state(scenario))
    field = TwoBodyField(psi=psi, x=scenario.grid(), params=scenario.params, softening=scenario.softening)
    field = replace(field, psi=psi / math.sqrt(field.norm()))
    check_spectrum(field)
    return field


def check_spectrum(field: TwoBodyField, budget=SPECTRAL_TAIL_BUDGET):
    """Require the spectral weight above half the Nyquist wavenumber to stay below budget.

    Raises:
        GridError: the grid does not resolve the fastest kinetic phase with margin two
    """
    k = np.abs(wavenumbers(field.points, field.spacing))
    power = np.abs(np.fft.fft2(field.psi)) ** 2
    cutoff = 0.5 * np.pi / field.spacing
    tail = (k[:, None] > cutoff) | (k[None, :] > cutoff)
    fraction = float(power[tail].sum() / power.sum())
    if fraction > budget:
        raise GridError(f'spectral weight {fraction:.3g} above half the Nyquist wavenumber, refine the grid')
    return fraction


def boundary_density(field: TwoBodyField, fraction=0.05):
    """Fraction of the density within the outer `fraction` of points along either axis"""
    edge = max(1, int(round(fraction * field.points)))
    density = np.abs(field.psi) ** 2
    inner = density[edge:-edge, edge:-edge].sum()
    total = density.sum()
    return float((total - inner) / total)


def check_boundary(field: TwoBodyField, budget=1e-6, fraction=0.05):
    value = boundary_density(field, fraction)
    if value > budget:
        raise BoundaryLeakError(f'boundary density {value:.3g} exceeds {budget:g} at t={field.t:.6g}')
    return value


def _potential(field: TwoBodyField):
    return field.coupling * softcore.potential(field.x[:, None] - field.x[None, :], field.softening)


def _kinetic(field: TwoBodyField):
    k = wavenumbers(field.points, field.spacing)
    params = field.params
    return (k[:, None] ** 2 / (2.0 * params.m_e) + k[None, :] ** 2 / (2.0 * params.m_p)) * params.hbar ** 2


def propagate_twobody(field: TwoBodyField, dt, steps=1, boundary_budget=None, boundary_fraction=0.05):
    """Second order split-operator steps exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2).

    Args:
        field(TwoBodyField): field at time t
        dt(float): time step
        steps(int): number of steps
        boundary_budget(float): abort if the boundary density exceeds this after the steps

    Returns:
        TwoBodyField at t + steps dt

    Raises:
        BoundaryLeakError: boundary density above budget
    """
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f'time step must be positive, got {dt}')
    hbar = field.params.hbar
    half_potential = np.exp(-0.5j * dt * _potential(field) / hbar)
    kinetic = np.exp(-1j * dt * _kinetic(field) / hbar)
    psi = field.psi
    for _ in range(steps):
        psi = half_potential * np.fft.ifft2(kinetic * np.fft.fft2(half_potential * psi))
    field = replace(field, psi=psi, t=field.t + steps * dt)
    if boundary_budget is not None:
        check_boundary(field, boundary_budget, boundary_fraction)
    return field


def marginals(field: TwoBodyField):
    """Electron density over x_e, proton density over x_p and their first moments"""
    density = np.abs(field.psi) ** 2
    dx = field.spacing
    rho_e = density.sum(axis=1) * dx
    rho_p = density.sum(axis=0) * dx
    return rho_e, rho_p, float(np.sum(field.x * rho_e) * dx), float(np.sum(field.x * rho_p) * dx)


def relative_marginal(field: TwoBodyField):
    """Density of x_e - x_p on the relative grid"""
    n = field.points
    density = np.abs(field.psi) ** 2 * field.spacing
    rho = np.bincount(_relative_index(n).ravel(), weights=density.ravel(), minlength=2 * n)
    u = uniform_grid(n * field.spacing, 2 * n)
    return u, rho


def _spectral_weights(field: TwoBodyField):
    n = field.points
    return np.abs(np.fft.fft2(field.psi)) ** 2 * field.spacing ** 2 / n ** 2


def twobody_momenta(field: TwoBodyField):
    """(<p_e>, <p_p>) by spectral differentiation"""
    k = wavenumbers(field.points, field.spacing, derivative=True)
    weights = _spectral_weights(field) * field.params.hbar
    return float(np.sum(k[:, None] * weights)), float(np.sum(k[None, :] * weights))


def twobody_momentum(field: TwoBodyField):
    """Total momentum <p_e> + <p_p>"""
    p_e, p_p = twobody_momenta(field)
    return p_e + p_p


def twobody_energy(field: TwoBodyField):
    """<T_e + T_p + V>"""
    kinetic = float(np.sum(_kinetic(field) * _spectral_weights(field)))
    potential = float(np.sum(_potential(field) * np.abs(field.psi) ** 2) * field.spacing ** 2)
    return kinetic + potential


def proton_purity(field: TwoBodyField):
    """Tr(rho_p^2) of the proton reduced density operator.

    With A = psi dx the reduced operator is A^T A^*, its purity is the sum of
    the fourth powers of the singular values of A divided by the squared norm.
    """
    s = svdvals(field.psi * field.spacing)
    weights = s ** 2
    return float(np.sum(weights ** 2) / np.sum(weights) ** 2)


def evolve_separated(scenario: OracleScenario, t, basis: softcore.EigenBasis = None) -> TwoBodyField:
    """Evolve relative and center-of-mass factors independently and recombine them.

    The relative factor is propagated with the 1-d split-operator scheme and the
    reduced mass on the relative grid, the center-of-mass factor is the analytic
    free Gaussian of mass M. With the same step both agree with the two-body
    propagation up to the spatial discretization.
    """
    scenario.validate()
    params = scenario.params
    if basis is None:
        basis = relative_states(scenario)
    phi = relative_wavefunction(scenario, basis)
    u = scenario.relative_grid()
    steps = int(round(t / scenario.dt))
    if steps:
        k = wavenumbers(len(u), scenario.spacing)
        half_potential = np.exp(-0.5j * scenario.dt * softcore.potential(u, scenario.softening) / params.hbar)
        kinetic = np.exp(-1j * scenario.dt * params.hbar * k ** 2 / (2.0 * params.mu))
        for _ in range(steps):
            phi = half_potential * np.fft.ifft(kinetic * np.fft.fft(half_potential * phi))
    t = steps * scenario.dt

    # normalize like initial_field so both agree pointwise
    initial = combine(scenario, relative_wavefunction(scenario, basis), _com_state(scenario))
    scale = 1.0 / math.sqrt(float(np.sum(np.abs(initial) ** 2)) * scenario.spacing ** 2)
    psi = combine(scenario, phi, _com_state(scenario, t)) * scale
    return TwoBodyField(psi=psi, x=scenario.grid(), params=params, softening=scenario.softening, t=t)


def coarse_grained_marginal(relative_density, u, com: ComState, which, params: AtomParams, x):
    """Single-particle density as a convolution of the relative density with the center-of-mass density.

    rho_e(x) = int rho_r(u) |chi(x - (m_p/M) u)|^2 du and
    rho_p(x) = int rho_r(u) |chi(x + (m_e/M) u)|^2 du, evaluated by brute force.

    Args:
        relative_density: density of x_e - x_p sampled on u
        u: uniform relative grid
        com(ComState): center-of-mass state
        which(str): 'electron' or 'proton'
        params(AtomParams): masses
        x: output coordinates

    Returns:
        density on x
    """
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    if which == 'electron':
        R = x[:, None] - (params.m_p / params.M) * u[None, :]
    elif which == 'proton':
        R = x[:, None] + (params.m_e / params.M) * u[None, :]
    else:
        raise ValueError(f'unknown particle "{which}", expected electron or proton')
    com_density = np.abs(com.amplitude(R[..., None], params.M, params.hbar)) ** 2
    return (com_density * np.asarray(relative_density)[None, :]).sum(axis=1) * (u[1] - u[0])


def _sample(record: TrajectoryRecord, field: TwoBodyField, scenario: OracleScenario):
    rho_e, _, x_e, x_p = marginals(field)
    p_e, p_p = twobody_momenta(field)
    extras = {'purity': proton_purity(field)} if scenario.track_purity else {}
    record.append(t=field.t, r_p=[x_p], p_p=[p_p], r_e=[x_e], p_e=[p_e], P=[p_e + p_p],
                  H=twobody_energy(field), norm=field.norm(), density=rho_e, **extras)


def run_oracle(scenario: OracleScenario, basis: softcore.EigenBasis = None) -> TrajectoryRecord:
    """Propagate the two-body field and record marginal centers, momenta, energy, norm and purity.

    The final field is attached as record.final_state.

    Raises:
        BoundaryLeakError: boundary density above budget at a sample
    """
    scenario.validate()
    field = initial_field(scenario, basis)
    record = TrajectoryRecord(dim=1, meta={
        'kind': 'oracle', 'scenario': scenario.state_dict(), 'scenario_key': scenario.key(),
        'potential': f'soft-core (s={scenario.softening:g})', 'extra_units': {'purity': '1'},
    })
    record.density_grid = field.x
    check_boundary(field, scenario.boundary_budget, scenario.boundary_fraction)
    logger.info(f'two-body run: {scenario.points}^2 grid, {scenario.steps} steps of {scenario.dt:g}')

    _sample(record, field, scenario)
    done = 0
    while done < scenario.steps:
        chunk = min(scenario.steps_per_sample, scenario.steps - done)
        field = propagate_twobody(field, scenario.dt, chunk, scenario.boundary_budget, scenario.boundary_fraction)
        done += chunk
        _sample(record, field, scenario)
    record.final_state = field
    return record


def _peak_to_peak(values):
    values = np.asarray(values, dtype=float)
    return float(values.max() - values.min()) if len(values) else 0.0


def _drift(values):
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values - values[0]))) if len(values) else 0.0


def _overlaps(oracle_run, hybrid_run):
    if not oracle_run.densities or not hybrid_run.densities:
        return None
    if oracle_run.density_grid is None or hybrid_run.density_grid is None or \
            len(oracle_run.density_grid) != len(hybrid_run.density_grid) or \
            not np.allclose(oracle_run.density_grid, hybrid_run.density_grid):
        raise ScenarioMismatchError('electron densities were sampled on different grids')
    dx = float(oracle_run.density_grid[1] - oracle_run.density_grid[0])
    return np.array([float(np.sum(np.sqrt(np.clip(a, 0, None) * np.clip(b, 0, None))) * dx)
                     for a, b in zip(oracle_run.densities, hybrid_run.densities)])


def compare_with_hybrid(oracle_run: TrajectoryRecord, hybrid_run: TrajectoryRecord, momentum_tolerance=1e-6,
                        overlap_threshold=0.9, discrepancy_ratio=10.0) -> ComparisonReport:
    """Contrast an exact two-body run with a hybrid run of the same scenario.

    Metrics: proton center discrepancy (max, rms), peak-to-peak proton excursions
    and their ratio, total momentum drift of both runs, the electron density
    overlap series (Bhattacharyya coefficient), and the ratio between the two-body
    proton excursion and (m_e/M) times the relative excursion.

    Raises:
        ScenarioMismatchError: different scenarios, dimensions or sample times
    """
    if oracle_run.dim != hybrid_run.dim:
        raise ScenarioMismatchError(f'dimensions differ: {oracle_run.dim} and {hybrid_run.dim}')
    if oracle_run.meta.get('scenario_key') != hybrid_run.meta.get('scenario_key'):
        raise ScenarioMismatchError('runs belong to different scenarios')
    t_o, t_h = oracle_run['t'], hybrid_run['t']
    if len(t_o) != len(t_h) or not np.allclose(t_o, t_h, rtol=1e-9, atol=1e-12):
        raise ScenarioMismatchError('runs were sampled at different times')
    oracle_run.validate()
    hybrid_run.validate()

    r_o, r_h = oracle_run['r_p'], hybrid_run['r_p']
    difference = np.linalg.norm(r_o - r_h, axis=-1)
    excursion_o = max(_peak_to_peak(r_o[:, i]) for i in range(oracle_run.dim))
    excursion_h = max(_peak_to_peak(r_h[:, i]) for i in range(hybrid_run.dim))
    ratio = excursion_o / max(excursion_h, 1e-12)
    drift_o = _drift(np.linalg.norm(oracle_run['P'] - oracle_run['P'][0], axis=-1))
    drift_h = _drift(np.linalg.norm(hybrid_run['P'] - hybrid_run['P'][0], axis=-1))
    relative_o = oracle_run['r_e'] - r_o
    relative_h = hybrid_run['r_e'] - r_h
    overlaps = _overlaps(oracle_run, hybrid_run)

    metrics = {
        'proton_max_discrepancy': float(difference.max()),
        'proton_rms_discrepancy': float(np.sqrt(np.mean(difference ** 2))),
        'proton_excursion_oracle': excursion_o,
        'proton_excursion_hybrid': excursion_h,
        'proton_excursion_ratio': float(ratio),
        'momentum_drift_oracle': drift_o,
        'momentum_drift_hybrid': drift_h,
        'relative_excursion_oracle': _peak_to_peak(relative_o[:, 0]),
        'relative_excursion_hybrid': _peak_to_peak(relative_h[:, 0]),
        'density_overlap': None if overlaps is None else overlaps.tolist(),
        'density_overlap_min': None if overlaps is None else float(overlaps.min()),
    }
    scenario = oracle_run.meta.get('scenario', {})
    if 'mass_ratio' in scenario:
        params = make_params(scenario['mass_ratio'])
        expected = params.m_e / params.M * metrics['relative_excursion_oracle']
        metrics['proton_relation_ratio'] = excursion_o / expected if expected > 0 else float('nan')

    electron_consistent = overlaps is None or overlaps.min() >= overlap_threshold
    proton_consistent = 1.0 / discrepancy_ratio < ratio < discrepancy_ratio

    def _conservation(drift):
        return 'conserved' if drift <= momentum_tolerance else 'not conserved'

    def _motion(excursion):
        return 'moves around the center of mass' if excursion > 1e-12 else 'behaves as a free particle'

    rows = [
        {
            'aspect': 'electron dynamics',
            'oracle': f'relative excursion {metrics["relative_excursion_oracle"]:.6g}',
            'hybrid': f'relative excursion {metrics["relative_excursion_hybrid"]:.6g}',
            'measure': metrics['density_overlap_min'],
            'verdict': 'consistent' if electron_consistent else 'discrepant',
        },
        {
            'aspect': 'proton dynamics',
            'oracle': _motion(excursion_o),
            'hybrid': _motion(excursion_h),
            'measure': metrics['proton_excursion_ratio'],
            'verdict': 'consistent' if proton_consistent else 'discrepant',
        },
        {
            'aspect': 'momentum conservation',
            'oracle': _conservation(drift_o),
            'hybrid': _conservation(drift_h),
            'measure': max(drift_o, drift_h),
            'verdict': 'consistent' if _conservation(drift_o) == _conservation(drift_h) else 'discrepant',
        },
    ]
    meta = {'hybrid_force_law': hybrid_run.meta.get('force_law'), 'scenario': oracle_run.meta.get('scenario_key')}
    return ComparisonReport(metrics=metrics, rows=rows, meta=meta)
