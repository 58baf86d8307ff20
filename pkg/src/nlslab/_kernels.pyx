# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled pointwise kernels for the split-step inner loop.

Same signatures as nlslab._kernels_np; selected at import by nlslab.backend.
"""

from libc.math cimport cos, sin, pow, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def nonlinear_phase(cnp.complex128_t[::1] u, double coef, double pm1,
                    cnp.complex128_t[::1] out):
    """out = u * exp(1j * coef * |u|**pm1), elementwise.  pm1 must be > 0."""
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double re, im, a2, phase, c, s
    cdef bint square = pm1 == 2.0
    cdef bint root = pm1 == 1.0
    for i in range(n):
        re = u[i].real
        im = u[i].imag
        a2 = re * re + im * im
        if square:
            phase = coef * a2
        elif root:
            phase = coef * sqrt(a2)
        elif a2 == 0.0:
            phase = 0.0
        else:
            phase = coef * pow(a2, 0.5 * pm1)
        c = cos(phase)
        s = sin(phase)
        out[i].real = re * c - im * s
        out[i].imag = re * s + im * c


def scaled_power(cnp.complex128_t[::1] u, double coef, double pm1,
                 cnp.complex128_t[::1] out):
    """out = coef * |u|**pm1 * u, elementwise.  pm1 must be > 0."""
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double re, im, a2, w
    cdef bint square = pm1 == 2.0
    cdef bint root = pm1 == 1.0
    for i in range(n):
        re = u[i].real
        im = u[i].imag
        a2 = re * re + im * im
        if square:
            w = coef * a2
        elif root:
            w = coef * sqrt(a2)
        elif a2 == 0.0:
            w = 0.0
        else:
            w = coef * pow(a2, 0.5 * pm1)
        out[i].real = re * w
        out[i].imag = im * w


def abs_power_sum(cnp.complex128_t[::1] u, double q):
    """sum(|u|**q).  q must be > 0."""
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double re, im, a2, acc = 0.0
    cdef bint square = q == 2.0
    for i in range(n):
        re = u[i].real
        im = u[i].imag
        a2 = re * re + im * im
        if square:
            acc += a2
        elif a2 != 0.0:
            acc += pow(a2, 0.5 * q)
    return acc
