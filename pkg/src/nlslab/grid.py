"""Periodic-box grids and complex fields with spectral transforms.

The spatial domain is the torus [0, L)^n sampled on a uniform lattice with
M points per axis.  The transform convention is

    coeff(xi_k) = sum_x u(x) exp(-2 pi i x . xi_k) * cellvol,   xi_k = k / L,

with integer k in [-M/2, M/2) per axis, so the Laplacian has symbol
-4 pi^2 |xi|^2 and a plane wave exp(2 pi i k x / L) has a single nonzero
coefficient of value L^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _field
from functools import lru_cache
from typing import Literal

import numpy as np

Representation = Literal["physical", "frequency"]


class RepresentationError(ValueError):
    """A field is in the wrong representation for the requested operation."""


@dataclass(frozen=True)
class BoxGrid:
    """Uniform periodic grid on [0, L)^dim with an even number of points per axis."""

    dim: int
    box_length: float
    points_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")
        m = self.points_per_axis
        if m < 8 or m % 2 != 0:
            raise ValueError(f"points_per_axis must be even and >= 8, got {m}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def num_points(self) -> int:
        return self.points_per_axis**self.dim

    @property
    def spacing(self) -> float:
        return self.box_length / self.points_per_axis

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def nyquist(self) -> float:
        """Largest resolved frequency magnitude per axis, M / (2 L)."""
        return self.points_per_axis / (2.0 * self.box_length)

    def axis_coordinates(self) -> np.ndarray:
        """Physical sample positions along one axis."""
        return _axis_coordinates(self)

    def frequency_axes(self) -> tuple[np.ndarray, ...]:
        """Per-axis frequency lattice in FFT ordering, xi = k / L."""
        return (_frequency_axis(self),) * self.dim

    def frequency_norm(self) -> np.ndarray:
        """|xi| on the full n-dimensional frequency lattice (FFT ordering)."""
        return _frequency_norm(self)


@lru_cache(maxsize=None)
def _axis_coordinates(grid: BoxGrid) -> np.ndarray:
    x = np.arange(grid.points_per_axis) * grid.spacing
    x.flags.writeable = False
    return x


@lru_cache(maxsize=None)
def _frequency_axis(grid: BoxGrid) -> np.ndarray:
    xi = np.fft.fftfreq(grid.points_per_axis, d=grid.spacing)
    xi.flags.writeable = False
    return xi


@lru_cache(maxsize=None)
def _frequency_norm(grid: BoxGrid) -> np.ndarray:
    axes = np.meshgrid(*grid.frequency_axes(), indexing="ij", sparse=True)
    norm = np.sqrt(sum(a**2 for a in axes))
    norm.flags.writeable = False
    return norm


@dataclass
class SpectralField:
    """Complex samples of a field on a BoxGrid, in physical or frequency space.

    Instances are treated as immutable values.  A one-slot cache holds the
    dual representation once a transform has been taken, so that round trips
    reproduce the original samples bit for bit and exactly band-limited
    spectra survive physical-space detours.
    """

    grid: BoxGrid
    samples: np.ndarray
    representation: Representation = "physical"
    _dual: np.ndarray | None = _field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.shape != self.grid.shape:
            raise ValueError(
                f"samples shape {self.samples.shape} does not match grid shape {self.grid.shape}"
            )
        if self.representation not in ("physical", "frequency"):
            raise ValueError(f"unknown representation {self.representation!r}")

    def to_frequency(self) -> "SpectralField":
        if self.representation == "frequency":
            return self
        if self._dual is not None:
            return SpectralField(self.grid, self._dual, "frequency", _dual=self.samples)
        coeff = np.fft.fftn(self.samples) * self.grid.cell_volume
        return SpectralField(self.grid, coeff, "frequency", _dual=self.samples)

    def to_physical(self) -> "SpectralField":
        if self.representation == "physical":
            return self
        if self._dual is not None:
            return SpectralField(self.grid, self._dual, "physical", _dual=self.samples)
        phys = np.fft.ifftn(self.samples) * (1.0 / self.grid.cell_volume)
        return SpectralField(self.grid, phys, "physical", _dual=self.samples)

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.samples.copy(), self.representation)


def transform(field: SpectralField, direction: Literal["forward", "inverse"]) -> SpectralField:
    """Forward (physical -> frequency) or inverse (frequency -> physical) transform."""
    if direction == "forward":
        if field.representation != "physical":
            raise RepresentationError("forward transform requires a physical-space field")
        return field.to_frequency()
    if direction == "inverse":
        if field.representation != "frequency":
            raise RepresentationError("inverse transform requires a frequency-space field")
        return field.to_physical()
    raise ValueError(f"unknown direction {direction!r}")


def field_from_coefficients(grid: BoxGrid, coeff: np.ndarray) -> SpectralField:
    """Physical-space field with the given frequency coefficients."""
    return SpectralField(grid, coeff, "frequency").to_physical()
