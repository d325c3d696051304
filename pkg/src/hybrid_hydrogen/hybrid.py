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

"""Mean-field hybrid dynamics of a quantum electron and a classical proton.

The hybrid Hamiltonian is H = <phi| T_e + V(r_e - r_p) |phi> + p_p^2 / (2 m_p).
Treating the electron wave function and (r_p, p_p) as canonical variables
gives two readings of the proton force:

    adiabatic   the electron is expanded in eigenstates rigidly attached to
                r_p. The population-weighted eigen-energies do not depend on
                r_p, so the force vanishes and the proton moves freely.
    ehrenfest   the force is the expectation of the potential gradient and
                the total momentum p_p + <p_e> is conserved.

Electron representations:

    adiabatic   coefficients over a CircularBasis (3-d, analytic circular
                states) or over a soft-core EigenBasis (1-d grid)
    grid        complex amplitudes on a 1-d periodic grid (soft-core potential)

The adiabatic law needs an adiabatic representation, the self-consistent
Ehrenfest propagation needs the grid representation. Mixing them raises
RepresentationError. The Ehrenfest force functional itself is available for
every representation.

Propagation uses the symmetric splitting H = (T_p + T_e) + V: half a potential
flow (proton kick, electron potential phase), a full kinetic flow (proton
drift, free electron propagation), and another half potential flow. Each flow
is solved exactly, so the step is time reversible, second order and conserves
the electron norm. Under the Ehrenfest law the kicks on proton and electron
are equal and opposite, which conserves the total momentum.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Optional, Union

import numpy as np

from hybrid_hydrogen import softcore
from hybrid_hydrogen.basis import bohr_energy, circular_dipoles, circular_quadrature, circular_superposition_on
from hybrid_hydrogen.core import AtomParams, PacketSpec
from hybrid_hydrogen.exceptions import (InvariantError, QuadratureError, RepresentationError, StepSizeError)
from hybrid_hydrogen.interfaces import TrajectoryRecord
from hybrid_hydrogen.math.grids import wavenumbers
from hybrid_hydrogen.reference import (CircularPacket, build_packet, kepler_period, relative_center,
                                       relative_momentum)
from hybrid_hydrogen.utils.logging import get_logger

logger = get_logger()

# largest admissible |force| of the adiabatic law, hartree / bohr
ADIABATIC_FORCE_TOLERANCE = 1e-10
# default step guard as a fraction of the electron period
STEP_GUARD = 1.0 / 1000.0
# finite difference displacement for the adiabatic force, bohr
FORCE_DISPLACEMENT = 1e-3


class ForceLaw(Enum):
    ADIABATIC = 'adiabatic'
    EHRENFEST = 'ehrenfest'

    @classmethod
    def parse(cls, value):
        """Accept a ForceLaw or one of 'adiabatic', 'adiabatic-gradient', 'ehrenfest'"""
        if isinstance(value, cls):
            return value
        name = str(value).lower().replace('_', '-')
        if name in ('adiabatic', 'adiabatic-gradient', 'adiabaticgradient'):
            return cls.ADIABATIC
        if name == 'ehrenfest':
            return cls.EHRENFEST
        raise ValueError(f'unknown force law "{value}", expected adiabatic or ehrenfest')


@dataclass(frozen=True)
class CircularBasis:
    """Circular states n_lo..n_hi of an electron with the given mass, centered on the proton"""
    spec: PacketSpec
    params: AtomParams
    mass: float

    dim = 3

    @cached_property
    def n(self):
        return np.arange(self.spec.n_lo, self.spec.n_hi + 1)

    @cached_property
    def energies(self):
        return bohr_energy(self.n, self.params, self.mass)

    @cached_property
    def dipoles(self):
        return circular_dipoles(self.n, self.params, self.mass)

    @property
    def count(self):
        return len(self.n)

    def period(self):
        return kepler_period(self.spec.n_bar, self.params, self.mass)

    def packet(self, coeffs) -> CircularPacket:
        return CircularPacket(n=self.n, coeffs=np.asarray(coeffs, dtype=complex), params=self.params,
                              spec=self.spec, time=0.0, mass=self.mass)


@dataclass(frozen=True)
class AdiabaticElectron:
    """Coefficients a_j over a basis attached to the proton"""
    basis: Union[CircularBasis, softcore.EigenBasis]
    coeffs: np.ndarray

    representation = 'adiabatic'

    @property
    def dim(self):
        return 3 if isinstance(self.basis, CircularBasis) else 1

    @property
    def mass(self):
        return self.basis.mass

    def norm(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def populations(self):
        return np.abs(self.coeffs) ** 2


@dataclass(frozen=True)
class GridElectron:
    """Electron amplitudes on a uniform periodic 1-d grid in the laboratory frame.

    Attributes:
        psi: complex amplitudes
        x: grid coordinates
        mass: electron mass
        softening: softening length of the interaction
        reference_period: electron oscillation period used by the step guard
        basis: optional eigenbasis (relative coordinates) for population diagnostics
    """
    psi: np.ndarray
    x: np.ndarray
    mass: float
    softening: float = softcore.DEFAULT_SOFTENING
    reference_period: Optional[float] = None
    basis: Optional[softcore.EigenBasis] = None

    representation = 'grid'
    dim = 1

    @property
    def spacing(self):
        return float(self.x[1] - self.x[0])

    def norm(self):
        return float(np.sum(np.abs(self.psi) ** 2) * self.spacing)


@dataclass(frozen=True)
class HybridState:
    """Canonical state of the hybrid system at time t"""
    electron: Union[AdiabaticElectron, GridElectron]
    r_p: np.ndarray
    p_p: np.ndarray
    t: float = 0.0

    @property
    def representation(self):
        return self.electron.representation

    @property
    def dim(self):
        return self.electron.dim


def _vector(value, dim, name):
    value = np.asarray(value, dtype=float).reshape(-1)
    if value.shape != (dim,):
        raise ValueError(f'{name} must have {dim} components, got {value.shape}')
    return value


def init_hybrid(spec: PacketSpec, r_p0, p_p0, params: AtomParams, mass=None) -> HybridState:
    """Circular packet of the hybrid electron centered on a classical proton.

    Args:
        spec(PacketSpec): electron packet
        r_p0, p_p0: initial proton position and momentum (3-vectors)
        params(AtomParams): atom parameters
        mass(float): electron mass, defaults to m_e. Passing the reduced mass
            reproduces the full quantum relative dynamics exactly.

    Returns:
        HybridState in the adiabatic representation
    """
    mass = params.m_e if mass is None else float(mass)
    packet = build_packet(spec, params, mass)
    basis = CircularBasis(spec=spec, params=params, mass=mass)
    electron = AdiabaticElectron(basis=basis, coeffs=packet.coeffs)
    return HybridState(electron=electron, r_p=_vector(r_p0, 3, 'r_p0'), p_p=_vector(p_p0, 3, 'p_p0'))


def init_softcore_hybrid(basis: softcore.EigenBasis, coeffs, r_p0=0.0, p_p0=0.0,
                         representation='grid') -> HybridState:
    """1-d hybrid state with the electron in a superposition of soft-core eigenstates.

    Args:
        basis(EigenBasis): eigenstates of the electron (mass m_e) on the simulation grid
        coeffs: expansion coefficients, normalized here
        r_p0, p_p0: initial proton position and momentum
        representation(str): 'grid' or 'adiabatic'

    Returns:
        HybridState
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    norm = np.linalg.norm(coeffs)
    if norm == 0:
        raise ValueError('coefficients must not vanish')
    coeffs = coeffs / norm
    r_p0 = _vector(r_p0, 1, 'r_p0')
    p_p0 = _vector(p_p0, 1, 'p_p0')

    if representation == 'adiabatic':
        electron = AdiabaticElectron(basis=basis, coeffs=coeffs)
    elif representation == 'grid':
        psi = softcore.translate(basis.superpose(coeffs), basis.spacing, r_p0[0])
        period = basis.period() if basis.count > 1 else None
        electron = GridElectron(psi=psi, x=basis.x, mass=basis.mass, softening=basis.softening,
                                reference_period=period, basis=basis)
    else:
        raise RepresentationError(f'unknown electron representation "{representation}"')
    return HybridState(electron=electron, r_p=r_p0, p_p=p_p0)


def _relative_wavefunction(electron: AdiabaticElectron):
    return electron.basis.superpose(electron.coeffs)


def electron_wavefunction(state: HybridState):
    """Electron amplitudes (x, psi) on the laboratory grid of a 1-d state"""
    electron = state.electron
    if isinstance(electron, GridElectron):
        return electron.x, electron.psi
    if isinstance(electron.basis, CircularBasis):
        raise RepresentationError('circular states have no grid wave function, use reference.sample_field_plane')
    psi = softcore.translate(_relative_wavefunction(electron), electron.basis.spacing, state.r_p[0])
    return electron.basis.x, psi


def electron_density(state: HybridState):
    """Electron density (x, |psi|^2) on the laboratory grid of a 1-d state"""
    x, psi = electron_wavefunction(state)
    return x, np.abs(psi) ** 2


def _kinetic_energy(psi, spacing, mass):
    k = wavenumbers(len(psi), spacing)
    return float(np.sum(k ** 2 / (2.0 * mass) * np.abs(np.fft.fft(psi)) ** 2) * spacing / len(psi))


def _grid_momentum(psi, spacing):
    k = wavenumbers(len(psi), spacing, derivative=True)
    return float(np.sum(k * np.abs(np.fft.fft(psi)) ** 2) * spacing / len(psi))


def hybrid_energy(state: HybridState, params: AtomParams):
    """<phi| T_e + V |phi> + p_p^2 / (2 m_p) in hartree.

    In the adiabatic representation this is sum_j |a_j|^2 E_j + p_p^2 / (2 m_p).
    """
    proton = float(state.p_p @ state.p_p) / (2.0 * params.m_p)
    electron = state.electron
    if electron.representation == 'adiabatic':
        return float(np.sum(electron.populations() * electron.basis.energies)) + proton

    dx = electron.spacing
    potential = softcore.potential(electron.x - state.r_p[0], electron.softening)
    interaction = float(np.sum(potential * np.abs(electron.psi) ** 2) * dx)
    return _kinetic_energy(electron.psi, dx, electron.mass) + interaction + proton


def force_adiabatic(state: HybridState, params: AtomParams, displacement=FORCE_DISPLACEMENT):
    """Adiabatic proton force -grad_{r_p} sum_n |a_n|^2 E_n.

    Evaluated by symmetric finite differences of hybrid_energy under a rigid
    shift of the proton together with its attached basis. The result vanishes
    identically for the hydrogen spectrum.

    Raises:
        RepresentationError: grid representation
        InvariantError: |force| exceeds 1e-10 hartree/bohr
    """
    if state.representation != 'adiabatic':
        raise RepresentationError('the adiabatic force law requires an electron basis attached to the proton')
    gradient = np.zeros(state.dim)
    for axis in range(state.dim):
        shift = np.zeros(state.dim)
        shift[axis] = displacement
        forward = hybrid_energy(replace(state, r_p=state.r_p + shift), params)
        backward = hybrid_energy(replace(state, r_p=state.r_p - shift), params)
        gradient[axis] = (forward - backward) / (2.0 * displacement)
    force = -gradient
    magnitude = float(np.linalg.norm(force))
    if magnitude > ADIABATIC_FORCE_TOLERANCE:
        raise InvariantError(f'adiabatic force {magnitude:.3g} exceeds {ADIABATIC_FORCE_TOLERANCE:g}')
    return force


def _circular_ehrenfest_force(electron: AdiabaticElectron, quadrature=None):
    basis = electron.basis
    if quadrature is None:
        quadrature = circular_quadrature(basis.spec.n_lo, basis.spec.n_hi, basis.params, basis.mass)
    values = circular_superposition_on(quadrature, basis.n, electron.coeffs, basis.params, basis.mass)
    density = np.abs(values) ** 2
    _, theta, phi = quadrature.mesh()
    # r^2 from the volume element cancels 1/r^2 of the Coulomb force
    directions = (np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
    force = np.array([quadrature.integrate(density * d) for d in directions])
    if not np.all(np.isfinite(force)):
        raise QuadratureError('non-finite Ehrenfest force from the circular state quadrature')
    return force


def force_ehrenfest(state: HybridState, params: AtomParams, quadrature=None):
    """Ehrenfest force -<phi| grad_{r_p} V(r_e - r_p) |phi> on the proton.

    3-d circular packets use the Coulomb potential and a spherical quadrature
    over the coefficient expanded density, 1-d states use the soft-core
    potential summed over the grid density.

    Args:
        state(HybridState): hybrid state
        params(AtomParams): atom parameters
        quadrature(SphericalQuadrature): optional rule for circular packets

    Returns:
        force vector (hartree / bohr)

    Raises:
        QuadratureError: non-finite quadrature result
    """
    electron = state.electron
    if electron.representation == 'adiabatic' and isinstance(electron.basis, CircularBasis):
        return _circular_ehrenfest_force(electron, quadrature)

    if electron.representation == 'adiabatic':
        u, dx = electron.basis.x, electron.basis.spacing
        density = np.abs(_relative_wavefunction(electron)) ** 2
        softening = electron.basis.softening
    else:
        u, dx = electron.x - state.r_p[0], electron.spacing
        density = np.abs(electron.psi) ** 2
        softening = electron.softening
    return np.array([float(np.sum(density * softcore.gradient(u, softening)) * dx)])


def electron_momentum(state: HybridState):
    """<p_e> of the electron wave function (the attached basis does not contribute)"""
    electron = state.electron
    if electron.representation == 'adiabatic' and isinstance(electron.basis, CircularBasis):
        return relative_momentum(electron.basis.packet(electron.coeffs), 0.0)
    if electron.representation == 'adiabatic':
        return np.array([_grid_momentum(_relative_wavefunction(electron), electron.basis.spacing)])
    return np.array([_grid_momentum(electron.psi, electron.spacing)])


def electron_center(state: HybridState):
    """<r_e> in the laboratory frame"""
    electron = state.electron
    if electron.representation == 'adiabatic' and isinstance(electron.basis, CircularBasis):
        return state.r_p + relative_center(electron.basis.packet(electron.coeffs), 0.0)
    if electron.representation == 'adiabatic':
        density = np.abs(_relative_wavefunction(electron)) ** 2
        return state.r_p + np.sum(electron.basis.x * density) * electron.basis.spacing
    return np.array([np.sum(electron.x * np.abs(electron.psi) ** 2) * electron.spacing])


def total_momentum(state: HybridState, params: AtomParams):
    """P = p_p + <phi| p_e |phi>"""
    return state.p_p + electron_momentum(state)


def populations(state: HybridState):
    """Adiabatic populations |a_j|^2, projections onto the attached eigenbasis for grid electrons"""
    electron = state.electron
    if electron.representation == 'adiabatic':
        return electron.populations()
    if electron.basis is None:
        return np.zeros(0)
    relative = softcore.translate(electron.psi, electron.spacing, -state.r_p[0])
    return np.abs(electron.basis.project(relative)) ** 2


def electron_period(state: HybridState):
    """Period used by the step guard, None if the electron does not define one"""
    electron = state.electron
    if electron.representation == 'grid':
        return electron.reference_period
    if isinstance(electron.basis, CircularBasis) or electron.basis.count > 1:
        return electron.basis.period()
    return None


def _check_step(state, dt, max_dt):
    if not (math.isfinite(dt) and dt > 0):
        raise StepSizeError(f'time step must be positive and finite, got {dt}')
    if max_dt is None:
        period = electron_period(state)
        max_dt = None if period is None else STEP_GUARD * period
    if max_dt is not None and dt > max_dt * (1.0 + 1e-12):
        raise StepSizeError(f'time step {dt:.6g} exceeds the guard {max_dt:.6g}')


def _potential_flow(state: HybridState, tau, law: ForceLaw, params: AtomParams):
    # positions are frozen during this flow, so force and phase are exact
    if law is ForceLaw.ADIABATIC:
        force = force_adiabatic(state, params)
        return replace(state, p_p=state.p_p + tau * force)

    electron = state.electron
    u = electron.x - state.r_p[0]
    force = np.array([float(np.sum(np.abs(electron.psi) ** 2 * softcore.gradient(u, electron.softening))
                            * electron.spacing)])
    phase = np.exp(-1j * softcore.potential(u, electron.softening) * tau / params.hbar)
    return replace(state, electron=replace(electron, psi=electron.psi * phase), p_p=state.p_p + tau * force)


def _kinetic_flow(state: HybridState, tau, params: AtomParams):
    r_p = state.r_p + state.p_p / params.m_p * tau
    electron = state.electron
    if electron.representation == 'adiabatic':
        phases = np.exp(-1j * electron.basis.energies * tau / params.hbar)
        electron = replace(electron, coeffs=electron.coeffs * phases)
    else:
        k = wavenumbers(len(electron.psi), electron.spacing)
        propagator = np.exp(-1j * params.hbar * k ** 2 / (2.0 * electron.mass) * tau)
        electron = replace(electron, psi=np.fft.ifft(propagator * np.fft.fft(electron.psi)))
    return replace(state, electron=electron, r_p=r_p)


def step(state: HybridState, dt, law, params: AtomParams, max_dt=None) -> HybridState:
    """One symmetric split step: half kick, drift with free electron evolution, half kick.

    In the adiabatic representation the electron eigenstates carry the full
    electronic Hamiltonian, so the electron only acquires phases exp(-i E_j dt)
    while the (vanishing) adiabatic force kicks the proton.

    Args:
        state(HybridState): current state
        dt(float): time step
        law(ForceLaw or str): force law, fixed for a run
        params(AtomParams): atom parameters
        max_dt(float): step guard, defaults to the electron period / 1000

    Returns:
        HybridState at t + dt

    Raises:
        StepSizeError: dt not positive or larger than the guard
        RepresentationError: law not defined for the electron representation
    """
    law = ForceLaw.parse(law)
    if law is ForceLaw.ADIABATIC and state.representation != 'adiabatic':
        raise RepresentationError('the adiabatic force law requires an electron basis attached to the proton')
    if law is ForceLaw.EHRENFEST and state.representation != 'grid':
        raise RepresentationError('self-consistent Ehrenfest propagation requires the grid representation')
    _check_step(state, dt, max_dt)

    state = _potential_flow(state, 0.5 * dt, law, params)
    state = _kinetic_flow(state, dt, params)
    state = _potential_flow(state, 0.5 * dt, law, params)
    return replace(state, t=state.t + dt)


@dataclass(frozen=True)
class HybridScenario:
    """Fixed-step hybrid run.

    Attributes:
        initial: initial state
        params: atom parameters
        law: force law
        dt: time step
        duration: propagation time
        stride: number of steps between samples
        max_dt: step guard override
        keep_densities: store 1-d electron densities with every sample
    """
    initial: HybridState
    params: AtomParams
    law: ForceLaw = ForceLaw.ADIABATIC
    dt: float = 0.0
    duration: float = 0.0
    stride: int = 1
    max_dt: Optional[float] = None
    keep_densities: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'law', ForceLaw.parse(self.law))
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f'time step must be positive, got {self.dt}')
        if not (math.isfinite(self.duration) and self.duration >= 0):
            raise ValueError(f'duration must be non-negative, got {self.duration}')
        if int(self.stride) != self.stride or self.stride < 1:
            raise ValueError(f'stride must be a positive integer, got {self.stride}')
        if self.keep_densities and self.initial.dim != 1:
            raise RepresentationError('electron densities are only kept for 1-d runs')

    @property
    def steps(self):
        return int(round(self.duration / self.dt))


def _sample(record: TrajectoryRecord, state: HybridState, params: AtomParams, keep_density):
    p_e = electron_momentum(state)
    density = electron_density(state)[1] if keep_density else None
    record.append(t=state.t, r_p=state.r_p, p_p=state.p_p, r_e=electron_center(state), p_e=p_e,
                  P=state.p_p + p_e, H=hybrid_energy(state, params), norm=state.electron.norm(),
                  populations=populations(state), density=density)


def run_hybrid(scenario: HybridScenario, law=None) -> TrajectoryRecord:
    """Propagate a hybrid scenario with fixed steps and record samples every `stride` steps.

    Args:
        scenario(HybridScenario): run definition
        law(ForceLaw or str): overrides scenario.law if given

    Returns:
        TrajectoryRecord including the initial and the final state
    """
    law = scenario.law if law is None else ForceLaw.parse(law)
    params = scenario.params
    state = scenario.initial
    meta = {
        'kind': 'hybrid', 'force_law': law.value, 'representation': state.representation,
        'dt': scenario.dt, 'steps': scenario.steps, 'electron_mass': state.electron.mass,
    }
    if state.dim == 1:
        softening = (state.electron.softening if state.representation == 'grid'
                     else state.electron.basis.softening)
        meta['potential'] = f'soft-core (s={softening:g})'
    else:
        meta['potential'] = 'coulomb'
    if state.representation == 'adiabatic' and isinstance(state.electron.basis, CircularBasis):
        meta['population_offset'] = int(state.electron.basis.spec.n_lo)

    record = TrajectoryRecord(dim=state.dim, meta=meta)
    if scenario.keep_densities:
        record.density_grid = electron_density(state)[0]
    logger.info(f'hybrid run: law {law.value}, {state.representation} representation, '
                f'{scenario.steps} steps of {scenario.dt:.6g}')

    _sample(record, state, params, scenario.keep_densities)
    for i in range(1, scenario.steps + 1):
        state = step(state, scenario.dt, law, params, scenario.max_dt)
        if i % scenario.stride == 0 or i == scenario.steps:
            _sample(record, state, params, scenario.keep_densities)
    record.final_state = state
    logger.debug(f'hybrid run finished at t={state.t:.6g} with {len(record)} samples')
    return record
