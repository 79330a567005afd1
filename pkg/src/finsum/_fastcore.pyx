# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot kernels.

Behavior must stay bit-for-bit comparable with finsum._purecore; the parity
tests in tests/test_backends.py hold the two together.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, expm1, fabs, pow, round, sin, sqrt

cnp.import_array()

from .errors import PoleError

NAME = "compiled"

cdef double SERIES_CUTOFF = 1e-6
cdef double SERIES_N_CUTOFF = 3e-3
cdef double POLE_EPS = 1e-12
cdef double TWO_PI = 6.283185307179586


cdef inline double cabs2(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline double complex cexpm1_c(double complex z) nogil:
    cdef double x = z.real
    cdef double y = z.imag
    cdef double ex, s
    if x < -745.0:
        return -1.0 + 0.0j
    ex = expm1(x)
    s = sin(0.5 * y)
    return (ex * cos(y) - 2.0 * s * s) + ((ex + 1.0) * sin(y)) * 1j


cdef inline double complex cexp_c(double complex z) nogil:
    cdef double x = z.real
    cdef double mag
    if x < -745.0:
        return 0.0 + 0.0j
    mag = exp(x)
    return (mag * cos(z.imag)) + (mag * sin(z.imag)) * 1j


cdef inline double complex geom_point(double complex z, long n,
                                      double s0, double s1, double s2,
                                      double s3, double s4, int *err) nogil:
    """sum_{k=1}^{n} exp(z k) for Re(z) <= 0; err set on a pole hit."""
    cdef double az = cabs2(z)
    cdef double complex den
    if az < SERIES_CUTOFF and az * n <= SERIES_N_CUTOFF:
        return s0 + z * (s1 + z * (s2 / 2.0 + z * (s3 / 6.0 + z * (s4 / 24.0))))
    den = cexpm1_c(z)
    if cabs2(den) < POLE_EPS:
        err[0] = 1
        return 0.0 + 0.0j
    return cexpm1_c(z * n) * (den + 1.0) / den


cdef inline double complex alt_point(double complex z, long n, int *err) nogil:
    """sum_{k=1}^{n} (-1)^(k+1) exp(z k); err set on a pole hit."""
    cdef double complex ez = cexpm1_c(z) + 1.0
    cdef double complex den = 1.0 + ez
    if cabs2(den) < POLE_EPS:
        err[0] = 1
        return 0.0 + 0.0j
    if n % 2 == 0:
        return -cexpm1_c(z * n) * ez / den
    return (2.0 + cexpm1_c(z * n)) * ez / den


def phi_grid(t_in, long n, int variant, alpha, beta):
    """Variant kernel Phi(t) on a grid of real abscissas t > 0."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.ascontiguousarray(t_in, dtype=np.float64)
    cdef Py_ssize_t m = t.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef double complex a = alpha
    cdef double complex b = beta
    cdef double complex w, v
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0
    cdef double nf = <double> n
    cdef int err = 0
    cdef Py_ssize_t i
    cdef Py_ssize_t bad = -1

    s0 = nf
    s1 = nf * (nf + 1.0) / 2.0
    s2 = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 6.0
    s3 = s1 * s1
    s4 = nf * (nf + 1.0) * (2.0 * nf + 1.0) * (3.0 * nf * nf + 3.0 * nf - 1.0) / 30.0

    with nogil:
        for i in range(m):
            w = a * t[i]
            if variant >= 4:
                w = w + b
            if variant == 1 or variant == 3 or variant == 5:
                v = alt_point(-w, n, &err)
            else:
                v = geom_point(-w, n, s0, s1, s2, s3, s4, &err)
            if err:
                bad = i
                break
            if variant == 2 or variant == 3:
                v = v * cexp_c(-b * t[i])
            out[i] = v
    if bad >= 0:
        w = a * t[bad]
        if variant >= 4:
            w = w + b
        raise PoleError("variant kernel pole on the integration path", pole=complex(-w))
    return out


def dirichlet_grid(alpha_in, long n):
    """sum_{k=1}^{n} exp(i alpha k) on a grid of real frequencies."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] alpha = np.ascontiguousarray(alpha_in, dtype=np.float64)
    cdef Py_ssize_t m = alpha.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef double s0, s1, s2, s3, s4, d
    cdef double nf = <double> n
    cdef int err = 0
    cdef Py_ssize_t i
    cdef Py_ssize_t bad = -1

    s0 = nf
    s1 = nf * (nf + 1.0) / 2.0
    s2 = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 6.0
    s3 = s1 * s1
    s4 = nf * (nf + 1.0) * (2.0 * nf + 1.0) * (3.0 * nf * nf + 3.0 * nf - 1.0) / 30.0

    with nogil:
        for i in range(m):
            d = alpha[i] - TWO_PI * round(alpha[i] / TWO_PI)
            out[i] = geom_point(d * 1j, n, s0, s1, s2, s3, s4, &err)
            if err:
                bad = i
                break
    if bad >= 0:
        raise PoleError("Dirichlet factor pole", pole=complex(alpha[bad]))
    return out


def neumaier_sum(x_in):
    """Compensated (Neumaier) sum of a complex array."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] x = np.ascontiguousarray(x_in, dtype=np.complex128)
    cdef Py_ssize_t m = x.shape[0]
    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef double v, tmp
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            v = x[i].real
            tmp = sr + v
            if fabs(sr) >= fabs(v):
                cr += (sr - tmp) + v
            else:
                cr += (v - tmp) + sr
            sr = tmp
            v = x[i].imag
            tmp = si + v
            if fabs(si) >= fabs(v):
                ci += (si - tmp) + v
            else:
                ci += (v - tmp) + si
            si = tmp
    return complex(sr + cr, si + ci)


def hurwitz_head(double s, double a, long m):
    """Compensated partial sum sum_{j=0}^{m-1} (j+a)^(-s)."""
    cdef double acc = 0.0, comp = 0.0, v, tmp
    cdef long j
    if m <= 0:
        return 0.0
    with nogil:
        for j in range(m):
            v = pow(a + j, -s)
            tmp = acc + v
            if fabs(acc) >= fabs(v):
                comp += (acc - tmp) + v
            else:
                comp += (v - tmp) + acc
            acc = tmp
    return acc + comp
