"""Kernel backend selection.

The compiled extension is preferred when it imports; otherwise the numpy
fallback is used.  Set NLSLAB_BACKEND=numpy to force the fallback (used by
the benchmark and the cross-backend tests).
"""

import os

import numpy as np

if os.environ.get("NLSLAB_BACKEND", "").lower() == "numpy":
    from . import _kernels_np as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_np as _impl

        BACKEND = "numpy"


def _flat(a: np.ndarray) -> np.ndarray:
    if not a.flags.c_contiguous:
        raise ValueError("kernel arrays must be C-contiguous")
    return a.reshape(-1)


def nonlinear_phase(u: np.ndarray, coef: float, pm1: float, out: np.ndarray | None = None):
    """u * exp(1j * coef * |u|**pm1), elementwise over an arbitrary-shape array."""
    if out is None:
        out = np.empty_like(u)
    _impl.nonlinear_phase(_flat(u), float(coef), float(pm1), _flat(out))
    return out


def scaled_power(u: np.ndarray, coef: float, pm1: float, out: np.ndarray | None = None):
    """coef * |u|**pm1 * u, elementwise over an arbitrary-shape array."""
    if out is None:
        out = np.empty_like(u)
    _impl.scaled_power(_flat(u), float(coef), float(pm1), _flat(out))
    return out


def abs_power_sum(u: np.ndarray, q: float) -> float:
    """sum(|u|**q) over all elements."""
    return float(_impl.abs_power_sum(_flat(u), float(q)))
