# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Mirrors ``_core_py`` exactly in contract."""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport cos, sin, fabs, floor, M_PI

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csin(double complex)
    double cabs(double complex)

cnp.import_array()

BACKEND = "cython"


cdef inline double complex _corrected_exp(double complex u, int m) noexcept nogil:
    cdef double complex term, total
    cdef int j
    if m < 0:
        return cexp(u)
    if cabs(u) < 1.0:
        term = 1.0
        for j in range(1, m + 2):
            term = term * u / j
        total = term
        j = m + 1
        while cabs(term) > 1e-18 * cabs(total) and j < 60:
            j += 1
            term = term * u / j
            total = total + term
        return total
    total = 1.0
    term = 1.0
    for j in range(1, m + 1):
        term = term * u / j
        total = total + term
    return cexp(u) - total


def corrected_exp(u, int m):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] uu = np.ascontiguousarray(
        np.ravel(u), dtype=np.complex128)
    cdef Py_ssize_t n = uu.shape[0], k
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef const double complex[::1] ui = uu
    with nogil:
        for k in range(n):
            o[k] = _corrected_exp(ui[k], m)
    return out.reshape(np.shape(u))


def exp_sum(z, nodes, coeffs, int m):
    """out[j] = sum_k coeffs[k] * E_m(1j * z[j] * nodes[k])."""
    cdef const double complex[::1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double[::1] xi = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t nz = zz.shape[0], nk = xi.shape[0], j, k
    out = np.empty(nz, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex acc
    cdef double x, ph, re, im
    for j in prange(nz, nogil=True, schedule="static"):
        acc = 0.0
        if m < 0 and zz[j].imag == 0.0:
            x = zz[j].real
            re = 0.0
            im = 0.0
            for k in range(nk):
                ph = x * xi[k]
                re = re + c[k].real * cos(ph) - c[k].imag * sin(ph)
                im = im + c[k].real * sin(ph) + c[k].imag * cos(ph)
            acc = re + 1j * im
        else:
            for k in range(nk):
                acc = acc + c[k] * _corrected_exp(1j * zz[j] * xi[k], m)
        o[j] = acc
    return out


cdef inline double complex _sinc_series(double complex x) noexcept nogil:
    cdef double complex x2 = x * x
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0


def sinc_sum(t, idx, values):
    """out[j] = sum_n values[n] * sinc(pi * (t[j] - idx[n])), sinc(x) = sin x / x.

    ``t`` holds evaluation points in lattice units, ``idx`` integer lattice
    indices. The phase is reduced to the nearest lattice point so that
    t[j] == n returns values[n] exactly.
    """
    cdef const double complex[::1] tt = np.ascontiguousarray(t, dtype=np.complex128)
    cdef const double[::1] nn = np.ascontiguousarray(idx, dtype=np.float64)
    cdef const double complex[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t nt = tt.shape[0], nv = nn.shape[0], j, k
    out = np.empty(nt, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex acc, delta, sd, arg
    cdef double kr, sign
    for j in prange(nt, nogil=True, schedule="static"):
        kr = floor(tt[j].real + 0.5)
        delta = tt[j] - kr
        sd = csin(M_PI * delta)
        acc = 0.0
        for k in range(nv):
            # sin(pi (t - n)) = (-1)^(k - n) sin(pi delta)
            sign = 1.0 if (<long>fabs(kr - nn[k])) % 2 == 0 else -1.0
            arg = M_PI * (delta + (kr - nn[k]))
            if cabs(arg) < 1e-4:
                acc = acc + v[k] * _sinc_series(arg)
            else:
                acc = acc + v[k] * sign * sd / arg
        o[j] = acc
    return out
