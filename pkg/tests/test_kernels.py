"""Cross-backend agreement between the compiled kernels and the numpy fallback."""

import numpy as np
import pytest

from nlslab import _kernels_np

compiled = pytest.importorskip("nlslab._kernels", reason="compiled extension not built")


def _random(n=1000, seed=0):
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    u[::97] = 0.0  # exercise the |u| = 0 branch
    return u


@pytest.mark.parametrize("pm1", [1.0, 1.5, 2.0, 3.2])
@pytest.mark.parametrize("coef", [0.3, -1.7])
def test_nonlinear_phase_agreement(pm1, coef):
    u = _random()
    out_c = np.empty_like(u)
    out_np = np.empty_like(u)
    compiled.nonlinear_phase(u, coef, pm1, out_c)
    _kernels_np.nonlinear_phase(u, coef, pm1, out_np)
    assert np.allclose(out_c, out_np, rtol=1e-13, atol=1e-15)
    assert np.allclose(np.abs(out_c), np.abs(u), rtol=1e-13)


@pytest.mark.parametrize("pm1", [1.0, 1.5, 2.0])
def test_scaled_power_agreement(pm1):
    u = _random(seed=1)
    out_c = np.empty_like(u)
    out_np = np.empty_like(u)
    compiled.scaled_power(u, -1.0, pm1, out_c)
    _kernels_np.scaled_power(u, -1.0, pm1, out_np)
    assert np.allclose(out_c, out_np, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("q", [2.0, 3.5, 4.0])
def test_abs_power_sum_agreement(q):
    u = _random(seed=2)
    a = compiled.abs_power_sum(u, q)
    b = _kernels_np.abs_power_sum(u, q)
    assert a == pytest.approx(b, rel=1e-12)
    assert a == pytest.approx(float(np.sum(np.abs(u) ** q)), rel=1e-11)


def test_backend_module_reports_selection():
    from nlslab import backend

    assert backend.BACKEND in ("cython", "numpy")
    u = _random(seed=3).reshape(10, 100)
    out = backend.nonlinear_phase(u, 0.2, 2.0)
    assert out.shape == u.shape
