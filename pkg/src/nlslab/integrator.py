"""Symmetric split-step spectral integration of i u_t + Lap u = sign |u|^(p-1) u.

Both substeps are exact flows: the linear propagator is a unitary Fourier
multiplier exp(-4 pi^2 i |xi|^2 dt) and the nonlinear flow is an exact
pointwise phase rotation (|u| is pointwise conserved), so mass is conserved
to rounding and all Hamiltonian drift is pure splitting error.  Runs are
guarded by a spectral-tail check (resolution) and a localization check
(validity of the periodic-box surrogate for decaying data).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import backend
from .diagnostics import DiagnosticsRecord
from .functionals import EquationParams, _kinetic_energy, _potential_energy
from .grid import BoxGrid, SpectralField


class EvolutionError(RuntimeError):
    """A guard aborted the evolution; .records holds the partial series."""

    def __init__(self, message: str, t: float, records: list[DiagnosticsRecord]):
        super().__init__(f"{message} at t = {t:.6g}")
        self.reason = message
        self.t = t
        self.records = records


class UnderResolvedError(EvolutionError):
    pass


class BoxTooSmallError(EvolutionError):
    pass


class NonFiniteFieldError(EvolutionError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-step solver parameters and guard thresholds.

    The linear phase per step must stay bounded, dt (2 pi M / (2 L))^2 <= pi;
    this is checked against the grid when a run starts.
    """

    dt: float
    t_end: float
    sample_every: int = 1
    tail_fraction_max: float = 1e-6
    localization_min: float = 0.01

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.t_end >= 0:
            raise ValueError(f"t_end must be nonnegative, got {self.t_end}")
        if self.sample_every < 1:
            raise ValueError(f"sample_every must be >= 1, got {self.sample_every}")
        if not 0.0 <= self.tail_fraction_max < 1.0:
            raise ValueError("tail_fraction_max must lie in [0, 1)")
        if not 0.0 < self.localization_min <= 1.0:
            raise ValueError("localization_min must lie in (0, 1]")

    def check_grid(self, grid: BoxGrid) -> None:
        phase = self.dt * (2.0 * np.pi * grid.nyquist) ** 2
        if phase > np.pi:
            raise ValueError(
                f"dt = {self.dt} too large for grid: linear phase per step "
                f"{phase:.3g} exceeds pi; reduce dt below {self.dt * np.pi / phase:.3g}"
            )


def linear_substep(field: SpectralField, dt: float) -> SpectralField:
    """Free propagator: multiply the spectrum by exp(-4 pi^2 i |xi|^2 dt)."""
    hat = field.to_frequency()
    phase = _linear_phase_table(field.grid, float(dt))
    out = SpectralField(field.grid, hat.samples * phase, "frequency")
    return out.to_physical() if field.representation == "physical" else out


def nonlinear_substep(field: SpectralField, dt: float, params: EquationParams) -> SpectralField:
    """Exact nonlinear flow: u -> u exp(-i sign |u|^(p-1) dt)."""
    phys = field.to_physical()
    out = backend.nonlinear_phase(phys.samples, -params.sign_value * dt, params.power - 1.0)
    return SpectralField(field.grid, out, "physical")


def strang_step(field: SpectralField, dt: float, params: EquationParams) -> SpectralField:
    """Second-order symmetric composition: nonlinear(dt/2), linear(dt), nonlinear(dt/2)."""
    half = nonlinear_substep(field, 0.5 * dt, params)
    full = linear_substep(half, dt)
    return nonlinear_substep(full, 0.5 * dt, params)


@lru_cache(maxsize=32)
def _linear_phase_table(grid: BoxGrid, dt: float) -> np.ndarray:
    table = np.exp(-4j * np.pi**2 * dt * grid.frequency_norm() ** 2)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _tail_mask(grid: BoxGrid) -> np.ndarray:
    mask = grid.frequency_norm() >= (2.0 / 3.0) * grid.nyquist
    mask.flags.writeable = False
    return mask


def tail_fraction(hat_samples: np.ndarray, grid: BoxGrid) -> float:
    """Fraction of spectral mass at |xi| >= 2/3 of the per-axis Nyquist frequency."""
    power = hat_samples.real**2 + hat_samples.imag**2
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    return float(np.sum(power[_tail_mask(grid)])) / total


def localization_fraction(phys_samples: np.ndarray, grid: BoxGrid) -> float:
    """Mass fraction inside the half-box centered at the torus center of mass.

    The center of mass is the circular mean of each coordinate weighted by
    |u|^2, which makes the check translation invariant on the torus.
    """
    density = phys_samples.real**2 + phys_samples.imag**2
    total = float(np.sum(density))
    if total == 0.0:
        return 1.0
    m = grid.points_per_axis
    inside = np.ones(grid.shape, dtype=bool)
    for axis in range(grid.dim):
        axis_density = np.apply_over_axes(
            np.sum, density, [a for a in range(grid.dim) if a != axis]
        ).reshape(m)
        angles = 2.0 * np.pi * np.arange(m) / m
        moment = np.sum(axis_density * np.exp(1j * angles))
        center = np.angle(moment) / (2.0 * np.pi) * m if abs(moment) > 0 else 0.0
        offset = (np.arange(m) - center + m / 2.0) % m - m / 2.0
        axis_inside = np.abs(offset) <= m / 4.0
        shape = [1] * grid.dim
        shape[axis] = m
        inside &= axis_inside.reshape(shape)
    return float(np.sum(density[inside])) / total


@dataclass
class EvolutionResult:
    field: SpectralField
    records: list[DiagnosticsRecord]


Observer = Callable[[float, SpectralField], None]
ExtraDiagnostics = Callable[[float, SpectralField], dict]


def evolve(
    field: SpectralField,
    params: EquationParams,
    config: SolverConfig,
    observers: Sequence[Observer] = (),
    extra_diagnostics: ExtraDiagnostics | None = None,
) -> EvolutionResult:
    """Run the split-step integration to t_end with guarded sampling.

    Diagnostics rows carry t, mass, Hamiltonian, Lyapunov and tail fraction;
    extra_diagnostics(t, field) may supply further DiagnosticsRecord columns
    (smoothed energies, Sobolev norm, cylinder distance, commutator residual).
    Guard violations raise EvolutionError subclasses carrying the partial
    series.
    """
    config.check_grid(field.grid)
    grid = field.grid
    cellvol = grid.cell_volume
    n_steps = int(round(config.t_end / config.dt))
    if abs(n_steps * config.dt - config.t_end) > 1e-9 * max(1.0, config.t_end):
        raise ValueError("t_end must be an integer multiple of dt")

    z = field.to_physical().samples.copy()
    phase_full = _linear_phase_table(grid, config.dt)
    pm1 = params.power - 1.0
    coef_half = -params.sign_value * 0.5 * config.dt
    records: list[DiagnosticsRecord] = []

    def sample(step: int) -> None:
        t = step * config.dt
        if not np.all(np.isfinite(z)):
            raise NonFiniteFieldError("non-finite sample", t, records)
        hat = np.fft.fftn(z) * cellvol
        tail = tail_fraction(hat, grid)
        if tail > config.tail_fraction_max:
            raise UnderResolvedError("under-resolved", t, records)
        loc = localization_fraction(z, grid)
        if loc < config.localization_min:
            raise BoxTooSmallError("box too small", t, records)
        snapshot = SpectralField(grid, z.copy(), "physical", _dual=hat)
        m = backend.abs_power_sum(z, 2.0) * cellvol
        kin = _kinetic_energy(hat, grid)
        pot = _potential_energy(z, grid, params)
        h = kin + pot
        row = DiagnosticsRecord(
            t=t, mass=m, hamiltonian=h, lyapunov=2.0 * h + m, tail_fraction=tail
        )
        if extra_diagnostics is not None:
            for key, value in extra_diagnostics(t, snapshot).items():
                setattr(row, key, value)
        if not row.finite():
            raise NonFiniteFieldError("non-finite sample", t, records)
        records.append(row)
        for obs in observers:
            obs(t, snapshot)

    sample(0)
    buf = np.empty_like(z)
    for step in range(1, n_steps + 1):
        backend.nonlinear_phase(z, coef_half, pm1, out=buf)
        zh = np.fft.fftn(buf)
        zh *= phase_full
        z = np.fft.ifftn(zh)
        if not z.flags.c_contiguous:
            z = np.ascontiguousarray(z)
        backend.nonlinear_phase(z, coef_half, pm1, out=z)
        if step % config.sample_every == 0 or step == n_steps:
            sample(step)

    return EvolutionResult(SpectralField(grid, z, "physical"), records)
