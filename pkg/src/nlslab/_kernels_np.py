"""Pure-numpy fallback for the compiled pointwise kernels."""

import numpy as np


def nonlinear_phase(u, coef, pm1, out):
    """out = u * exp(1j * coef * |u|**pm1), elementwise.  pm1 must be > 0."""
    a2 = u.real * u.real + u.imag * u.imag
    if pm1 == 2.0:
        phase = coef * a2
    else:
        phase = coef * a2 ** (0.5 * pm1)
    np.multiply(u, np.cos(phase) + 1j * np.sin(phase), out=out)


def scaled_power(u, coef, pm1, out):
    """out = coef * |u|**pm1 * u, elementwise.  pm1 must be > 0."""
    a2 = u.real * u.real + u.imag * u.imag
    if pm1 == 2.0:
        w = coef * a2
    else:
        w = coef * a2 ** (0.5 * pm1)
    np.multiply(u, w, out=out)


def abs_power_sum(u, q):
    """sum(|u|**q).  q must be > 0."""
    a2 = u.real * u.real + u.imag * u.imag
    if q == 2.0:
        return float(np.sum(a2))
    return float(np.sum(a2 ** (0.5 * q)))
