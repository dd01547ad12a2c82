# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Wigner small-d evaluation and the spin conditional entropy curve."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, log2, fabs

from ._wigner_table import wigner_terms

cnp.import_array()

cdef double LOG_ZERO = 1e-15


cdef inline double ipow(double x, long n) nogil:
    cdef double r = 1.0
    while n > 0:
        if n & 1:
            r *= x
        x *= x
        n >>= 1
    return r


cdef double neumaier(double* vals, Py_ssize_t n) nogil:
    cdef double s = 0.0, comp = 0.0, t, v
    cdef Py_ssize_t i
    for i in range(n):
        v = vals[i]
        t = s + v
        if fabs(s) >= fabs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
    return s + comp


cdef void fill_wigner(long d, double angle, const long[::1] offsets, const double[::1] coef,
                      const long[::1] cpow, const long[::1] spow, double[:, ::1] out,
                      double* scratch) nogil:
    cdef double c = cos(0.5 * angle)
    cdef double s = sin(0.5 * angle)
    cdef long e, t, lo, hi
    for e in range(d * d):
        lo = offsets[e]
        hi = offsets[e + 1]
        for t in range(lo, hi):
            scratch[t - lo] = coef[t] * ipow(c, cpow[t]) * ipow(s, spow[t])
        out[e // d, e % d] = neumaier(scratch, hi - lo)


cdef double plogp(double p) nogil:
    if p < LOG_ZERO:
        return 0.0
    return p * log2(p)


cdef dict _TABLES = {}


def _tables(int twice_s):
    """Typed copies of the term table plus the longest term run; cached per spin."""
    hit = _TABLES.get(twice_s)
    if hit is None:
        offsets, coef, cpow, spow = wigner_terms(twice_s)
        hit = (np.ascontiguousarray(offsets, dtype=np.int_), coef,
               np.ascontiguousarray(cpow, dtype=np.int_), np.ascontiguousarray(spow, dtype=np.int_),
               max(1, int(np.max(np.diff(offsets)))))
        _TABLES[twice_s] = hit
    return hit


def wigner_small_d(int twice_s, double angle):
    offsets, coef, cpow, spow, longest = _tables(twice_s)
    cdef long d = twice_s + 1
    out = np.empty((d, d))
    cdef double[::1] scratch = np.empty(longest)
    fill_wigner(d, angle, offsets, coef, cpow, spow, out, &scratch[0])
    return out


def conditional_entropy_curve(int twice_s, angles):
    offsets, coef, cpow, spow, longest = _tables(twice_s)
    cdef const long[::1] off_v = offsets
    cdef const double[::1] coef_v = coef
    cdef const long[::1] cp_v = cpow
    cdef const long[::1] sp_v = spow
    cdef long d = twice_s + 1
    cdef double[::1] ang = np.ascontiguousarray(angles, dtype=np.float64)
    cdef Py_ssize_t n = ang.shape[0]
    result = np.empty(n)
    cdef double[::1] res = result
    cdef double[:, ::1] w = np.empty((d, d))
    cdef double[::1] scratch = np.empty(longest)
    cdef double[::1] terms = np.empty(d * d)
    cdef double[::1] col = np.empty(d)
    cdef double[::1] prior = np.empty(d)
    cdef Py_ssize_t a, i, j
    cdef double p
    with nogil:
        for a in range(n):
            fill_wigner(d, ang[a], off_v, coef_v, cp_v, sp_v, w, &scratch[0])
            # P(m0, m) = d[m, m0]^2 / d; prior outcome m0 is the column index
            for j in range(d):
                for i in range(d):
                    p = w[i, j] * w[i, j] / d
                    col[i] = p
                    terms[j * d + i] = -plogp(p)
                prior[j] = -plogp(neumaier(&col[0], d))
            res[a] = neumaier(&terms[0], d * d) - neumaier(&prior[0], d)
    return result
