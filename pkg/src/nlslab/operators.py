"""Radial Fourier-multiplier operators: the smoothing multiplier, fractional
derivatives, and smooth low/high frequency splitting.

The smoothing multiplier of strength s and cutoff N has radial symbol

    m(r) = 1                 for r <= 1,
    m(r) = r^(s-1)           for r >= 2,

applied at r = |xi| / N.  On the open transition band 1 < r < 2 the symbol is
fixed (reproducibly) as log m linear in the cubic smoothstep of r - 1, which
is continuous, C^1, monotone nonincreasing and matches both endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .grid import BoxGrid, SpectralField

BLEND_SMOOTHSTEP_LOG = "smoothstep-log"
_LOG2 = np.log(2.0)


@dataclass(frozen=True)
class MultiplierSpec:
    """Parameters of the smoothing multiplier: regularity s, cutoff, blend id."""

    s: float
    cutoff: float
    blend: str = BLEND_SMOOTHSTEP_LOG

    def __post_init__(self):
        if not 0.0 < self.s <= 1.0:
            raise ValueError(f"s must lie in (0, 1], got {self.s}")
        if not self.cutoff >= 1.0:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.blend != BLEND_SMOOTHSTEP_LOG:
            raise ValueError(f"unknown blend profile {self.blend!r}")

    def symbol(self, r):
        """Evaluate the radial symbol m at r = |xi| / cutoff (vectorized)."""
        scalar = np.isscalar(r) or np.ndim(r) == 0
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.ones_like(r)
        high = r >= 2.0
        out[high] = r[high] ** (self.s - 1.0)
        mid = (r > 1.0) & (r < 2.0)
        t = r[mid] - 1.0
        w = t * t * (3.0 - 2.0 * t)
        out[mid] = np.exp((self.s - 1.0) * _LOG2 * w)
        return out[0] if scalar else out


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


@lru_cache(maxsize=None)
def _multiplier_table(grid: BoxGrid, spec: MultiplierSpec) -> np.ndarray:
    table = spec.symbol(grid.frequency_norm() / spec.cutoff)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _low_pass_table(grid: BoxGrid, cutoff: float) -> np.ndarray:
    # 1 on |xi| <= cutoff/2, 0 on |xi| >= cutoff, smoothstep blend between.
    t = (grid.frequency_norm() - cutoff / 2.0) / (cutoff / 2.0)
    table = 1.0 - _smoothstep(t)
    table.flags.writeable = False
    return table


def apply_symbol(field: SpectralField, symbol: Callable[[np.ndarray], np.ndarray]) -> SpectralField:
    """Multiply the spectrum by symbol(|xi|) and return a physical-space field.

    The symbol must be finite on the whole frequency lattice; a NaN or
    infinite value raises with the offending |xi|.
    """
    table = np.asarray(symbol(field.grid.frequency_norm()), dtype=float)
    bad = ~np.isfinite(table)
    if bad.any():
        offender = field.grid.frequency_norm()[bad].flat[0]
        raise ValueError(f"symbol is not finite on the lattice, first offender |xi| = {offender}")
    return _multiply_spectrum(field, table).to_physical()


def _multiply_spectrum(field: SpectralField, table: np.ndarray) -> SpectralField:
    """Frequency-space multiply; returns the input unchanged if it is a fixed point."""
    hat = field.to_frequency()
    scaled = hat.samples * table
    if np.array_equal(scaled, hat.samples):
        return field
    return SpectralField(field.grid, scaled, "frequency")


def apply_smoothing(field: SpectralField, spec: MultiplierSpec) -> SpectralField:
    """Apply the smoothing multiplier m(|xi| / cutoff).

    Fields whose spectrum is exactly supported where m = 1 are returned
    unchanged (bit for bit).  The output matches the input representation.
    """
    out = _multiply_spectrum(field, _multiplier_table(field.grid, spec))
    if out is field:
        return field
    return out.to_physical() if field.representation == "physical" else out


def fractional_derivative(
    field: SpectralField, alpha: float, kind: str = "inhomogeneous"
) -> SpectralField:
    """Fractional derivative of order alpha.

    kind="homogeneous" applies (2 pi |xi|)^alpha; kind="inhomogeneous" applies
    (1 + (2 pi |xi|)^2)^(alpha/2).  A homogeneous order alpha < 0 requires a
    zero-mean field (the symbol is singular at xi = 0).
    """
    if alpha == 0.0:
        return field
    norm = field.grid.frequency_norm()
    if kind == "inhomogeneous":
        table = (1.0 + (2.0 * np.pi * norm) ** 2) ** (alpha / 2.0)
    elif kind == "homogeneous":
        if alpha < 0.0:
            hat = field.to_frequency()
            zero_mode = abs(hat.samples[(0,) * field.grid.dim])
            scale = np.max(np.abs(hat.samples))
            if scale > 0 and zero_mode > 1e-13 * scale:
                raise ValueError(
                    "homogeneous derivative of negative order requires a zero-mean field"
                )
        with np.errstate(divide="ignore"):
            table = (2.0 * np.pi * norm) ** alpha
        table[(0,) * field.grid.dim] = 0.0 if alpha != 0 else 1.0
    else:
        raise ValueError(f"unknown kind {kind!r}")
    out = _multiply_spectrum(field, table)
    if out is field:
        return field
    return out.to_physical() if field.representation == "physical" else out


def frequency_split(field: SpectralField, cutoff: float) -> tuple[SpectralField, SpectralField]:
    """Split into low and high parts with low + high = field.

    The low-pass symbol is 1 on |xi| <= cutoff/2 and 0 on |xi| >= cutoff with
    a smoothstep blend between; the high part is the exact complement.
    """
    if not cutoff > 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    hat = field.to_frequency()
    table = _low_pass_table(field.grid, float(cutoff))
    low_hat = hat.samples * table
    high_hat = hat.samples - low_hat
    low = SpectralField(field.grid, low_hat, "frequency")
    high = SpectralField(field.grid, high_hat, "frequency")
    if field.representation == "physical":
        return low.to_physical(), high.to_physical()
    return low, high
