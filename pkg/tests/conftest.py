import numpy as np
import pytest

from nlslab.functionals import EquationParams
from nlslab.grid import BoxGrid, SpectralField, field_from_coefficients
from nlslab.ground_state import shoot


def random_field(grid: BoxGrid, seed: int, scale: float = 1.0) -> SpectralField:
    rng = np.random.default_rng(seed)
    samples = scale * (rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    return SpectralField(grid, samples, "physical")


def banded_field(grid: BoxGrid, seed: int, lo: float, hi: float, scale: float = 1.0) -> SpectralField:
    """Field with exact frequency support in lo <= |xi| <= hi."""
    rng = np.random.default_rng(seed)
    norm = grid.frequency_norm()
    mask = (norm >= lo) & (norm <= hi)
    coeff = np.zeros(grid.shape, dtype=np.complex128)
    count = int(np.sum(mask))
    coeff[mask] = scale * (rng.standard_normal(count) + 1j * rng.standard_normal(count))
    return field_from_coefficients(grid, coeff)


def smooth_bump(grid: BoxGrid, amplitude: float = 1.0, width_fraction: float = 0.1) -> SpectralField:
    """Gaussian bump centered in the box (spectrally negligible tails)."""
    x = grid.axis_coordinates()
    center = grid.box_length / 2.0
    width = width_fraction * grid.box_length
    profile = np.exp(-((x - center) ** 2) / (2.0 * width**2))
    samples = np.ones(grid.shape, dtype=np.complex128)
    for axis in range(grid.dim):
        shape = [1] * grid.dim
        shape[axis] = grid.points_per_axis
        samples = samples * profile.reshape(shape)
    return SpectralField(grid, amplitude * samples, "physical")


@pytest.fixture(scope="session")
def cubic_1d_profile():
    """Ground state for dim 1, p = 3 (closed form sqrt(2) sech r)."""
    return shoot(EquationParams(1, 3.0, "focusing"))


@pytest.fixture(scope="session")
def quadratic_1d_profile():
    """Ground state for dim 1, p = 2 (closed form 1.5 sech^2(r/2))."""
    return shoot(EquationParams(1, 2.0, "focusing"))
