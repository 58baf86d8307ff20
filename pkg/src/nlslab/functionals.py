"""Conserved and almost-conserved quantities of the power nonlinear
Schrodinger equation i u_t + Lap u = sign |u|^(p-1) u.

sign = +1 is defocusing, -1 focusing.  The Hamiltonian is

    H(u) = int 1/2 |grad u|^2 + sign / (p+1) |u|^(p+1),

the Lyapunov functional L(u) = 2 H(u) + int |u|^2, and the commutator
residual measures || S F(u) - F(S u) ||_2 for the smoothing multiplier S.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from . import backend
from .grid import BoxGrid, SpectralField
from .operators import MultiplierSpec, _multiplier_table


@dataclass(frozen=True)
class EquationParams:
    """Dimension, nonlinearity power p > 1, and focusing/defocusing sign."""

    dim: int
    power: float
    sign: Literal["defocusing", "focusing"]

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if not self.power > 1.0:
            raise ValueError(f"power must exceed 1, got {self.power}")
        if self.sign not in ("defocusing", "focusing"):
            raise ValueError(f"sign must be 'defocusing' or 'focusing', got {self.sign!r}")

    @property
    def sign_value(self) -> float:
        return 1.0 if self.sign == "defocusing" else -1.0

    @property
    def critical_regularity(self) -> float:
        """Sobolev index invariant under the equation's scaling, n/2 - 2/(p-1)."""
        return self.dim / 2.0 - 2.0 / (self.power - 1.0)

    @property
    def l2_subcritical(self) -> bool:
        return self.critical_regularity < 0.0

    @property
    def h1_subcritical(self) -> bool:
        return 1.0 / (self.power - 1.0) > (self.dim - 2.0) / 4.0


@lru_cache(maxsize=None)
def _gradient_weight(grid: BoxGrid) -> np.ndarray:
    w = (2.0 * np.pi * grid.frequency_norm()) ** 2
    w.flags.writeable = False
    return w


@lru_cache(maxsize=None)
def _sobolev_weight(grid: BoxGrid, s: float, kind: str) -> np.ndarray:
    norm2 = (2.0 * np.pi * grid.frequency_norm()) ** 2
    if kind == "inhomogeneous":
        w = (1.0 + norm2) ** s
    elif kind == "homogeneous":
        w = norm2**s
        if s < 0:
            w[(0,) * grid.dim] = 0.0
    else:
        raise ValueError(f"unknown kind {kind!r}")
    w.flags.writeable = False
    return w


def mass(field: SpectralField) -> float:
    """Squared L^2 norm, int |u|^2 dx."""
    if field.representation == "physical":
        return backend.abs_power_sum(field.samples, 2.0) * field.grid.cell_volume
    return backend.abs_power_sum(field.samples, 2.0) / field.grid.box_length**field.grid.dim


def lebesgue_norm(field: SpectralField, q: float) -> float:
    """L^q norm (int |u|^q dx)^(1/q) for q >= 1."""
    if not q >= 1.0:
        raise ValueError(f"q must be >= 1, got {q}")
    phys = field.to_physical()
    return (backend.abs_power_sum(phys.samples, q) * field.grid.cell_volume) ** (1.0 / q)


def sobolev_norm(field: SpectralField, s: float, kind: str = "inhomogeneous") -> float:
    """Sobolev norm with frequency weight <2 pi xi>^s (or (2 pi |xi|)^s homogeneous)."""
    hat = field.to_frequency()
    w = _sobolev_weight(field.grid, float(s), kind)
    total = float(np.sum(w * (hat.samples.real**2 + hat.samples.imag**2)))
    return float(np.sqrt(total / field.grid.box_length**field.grid.dim))


def _kinetic_energy(hat_samples: np.ndarray, grid: BoxGrid) -> float:
    w = _gradient_weight(grid)
    total = float(np.sum(w * (hat_samples.real**2 + hat_samples.imag**2)))
    return 0.5 * total / grid.box_length**grid.dim


def _potential_energy(phys_samples: np.ndarray, grid: BoxGrid, params: EquationParams) -> float:
    p1 = params.power + 1.0
    return params.sign_value / p1 * backend.abs_power_sum(phys_samples, p1) * grid.cell_volume


def hamiltonian(field: SpectralField, params: EquationParams) -> float:
    """H(u): spectral kinetic term plus signed potential term."""
    hat = field.to_frequency()
    phys = field.to_physical()
    return _kinetic_energy(hat.samples, field.grid) + _potential_energy(
        phys.samples, field.grid, params
    )


def lyapunov(field: SpectralField, params: EquationParams) -> float:
    """L(u) = 2 H(u) + int |u|^2."""
    return 2.0 * hamiltonian(field, params) + mass(field)


def nonlinearity(field: SpectralField, params: EquationParams) -> SpectralField:
    """F(u) = sign |u|^(p-1) u, pointwise in physical space (0 at u = 0)."""
    phys = field.to_physical()
    out = backend.scaled_power(phys.samples, params.sign_value, params.power - 1.0)
    return SpectralField(field.grid, out, "physical")


def nonlinearity_gradient(z, w, params: EquationParams):
    """Directional derivative of F at z in direction w:

        w . F'(z) = w Fz(z) + conj(w) Fzbar(z),
        Fz = sign (p+1)/2 |z|^(p-1),  Fzbar = sign (p-1)/2 |z|^(p-3) z^2.

    Returns 0 at z = 0 (continuous extension for p > 1).  Accepts scalars or
    arrays.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    p = params.power
    sgn = params.sign_value
    a = np.abs(z)
    apm1 = np.where(a > 0, a ** (p - 1.0), 0.0)
    # |z|^(p-3) z^2 written as |z|^(p-1) (z/|z|)^2 to stay finite near 0
    phase2 = np.where(a > 0, (z / np.where(a > 0, a, 1.0)) ** 2, 0.0)
    fz = sgn * (p + 1.0) / 2.0 * apm1
    fzbar = sgn * (p - 1.0) / 2.0 * apm1 * phase2
    out = w * fz + np.conj(w) * fzbar
    if out.ndim == 0:
        return complex(out)
    return out


def commutator_residual(field: SpectralField, spec: MultiplierSpec, params: EquationParams) -> float:
    """|| S F(u) - F(S u) ||_2 for the smoothing multiplier S.

    Evaluated in frequency space (Plancherel), so exactly banded inputs with
    F supported where the symbol is 1 give exactly zero.
    """
    grid = field.grid
    table = _multiplier_table(grid, spec)
    hat = field.to_frequency()
    scaled = hat.samples * table
    if np.array_equal(scaled, hat.samples):
        smoothed = field
    else:
        smoothed = SpectralField(grid, scaled, "frequency")
    f_u_hat = nonlinearity(field, params).to_frequency().samples
    f_su_hat = nonlinearity(smoothed, params).to_frequency().samples
    diff = table * f_u_hat - f_su_hat
    total = float(np.sum(diff.real**2 + diff.imag**2))
    return float(np.sqrt(total / grid.box_length**grid.dim))


def gn_exponent(params: EquationParams) -> float:
    """Gagliardo-Nirenberg gain exponent 2 - n (p-1) / 2, defined for s_c < 0."""
    if not params.l2_subcritical:
        raise ValueError("gn_exponent requires mass-subcritical parameters (s_c < 0)")
    return 2.0 - params.dim * (params.power - 1.0) / 2.0
