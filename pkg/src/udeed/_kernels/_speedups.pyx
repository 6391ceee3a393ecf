# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels.

Twin of udeed._kernels._numpy; see that module for the contracts. Loops
accumulate in plain C doubles, so results may differ from the numpy
backend by float rounding (summation order), never more.
"""

import numpy as np

from libc.math cimport exp, fabs, fmax, log1p

cdef double G_CLAMP = 1e-15


cdef inline double _sigmoid(double s) nogil:
    cdef double e
    if s >= 0:
        return 1.0 / (1.0 + exp(-s))
    e = exp(s)
    return e / (1.0 + e)


def f_matrix(const double[:, ::1] weights, const double[:, ::1] features):
    cdef Py_ssize_t m = weights.shape[0]
    cdef Py_ssize_t d = weights.shape[1]
    cdef Py_ssize_t n = features.shape[0]
    out = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] f = out
    cdef Py_ssize_t k, j, t
    cdef double s, g
    for k in range(m):
        for j in range(n):
            s = 0.0
            for t in range(d):
                s += weights[k, t] * features[j, t]
            g = _sigmoid(s)
            if g < G_CLAMP:
                g = G_CLAMP
            elif g > 1.0 - G_CLAMP:
                g = 1.0 - G_CLAMP
            f[k, j] = 2.0 * g - 1.0
    return out


def emp_sum_grad(const double[:, ::1] weights, const double[:, ::1] features,
                 const double[::1] labels):
    cdef Py_ssize_t m = weights.shape[0]
    cdef Py_ssize_t d = weights.shape[1]
    cdef Py_ssize_t n = features.shape[0]
    grads_arr = np.zeros((m, d), dtype=np.float64)
    cdef double[:, ::1] grads = grads_arr
    cdef Py_ssize_t k, j, t
    cdef double total = 0.0
    cdef double s, z, c
    for k in range(m):
        for j in range(n):
            s = 0.0
            for t in range(d):
                s += weights[k, t] * features[j, t]
            z = -labels[j] * s
            total -= fmax(z, 0.0) + log1p(exp(-fabs(z)))
            c = (1.0 + labels[j]) / 2.0 - _sigmoid(s)
            for t in range(d):
                grads[k, t] += c * features[j, t]
    return total, grads_arr


def div_sum_grad(const double[:, ::1] f_values, const double[:, ::1] features):
    cdef Py_ssize_t m = f_values.shape[0]
    cdef Py_ssize_t n = f_values.shape[1]
    cdef Py_ssize_t d = features.shape[1]
    r_arr = np.zeros((m, d), dtype=np.float64)
    cdef double[:, ::1] r = r_arr
    cdef Py_ssize_t k, j, t
    cdef double pair_sum = 0.0
    cdef double col_sum, sq_sum, fkj, c
    for j in range(n):
        col_sum = 0.0
        sq_sum = 0.0
        for k in range(m):
            fkj = f_values[k, j]
            col_sum += fkj
            sq_sum += fkj * fkj
        pair_sum += (col_sum * col_sum - sq_sum) / 2.0
        for k in range(m):
            fkj = f_values[k, j]
            c = (col_sum - fkj) * (1.0 - fkj * fkj)
            for t in range(d):
                r[k, t] += c * features[j, t]
    return pair_sum, r_arr
