# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, log, exp, pow, INFINITY

cnp.import_array()


def basis_matrix(double r, Py_ssize_t N, xs, bint use_log=False):
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t nx = x.shape[0]
    out_arr = np.empty((nx, N + 1), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] ints = np.zeros(N + 1)
    cdef double[::1] rpow = np.ones(N + 1)
    cdef double[::1] coef = np.empty(N + 1)
    cdef double[::1] fall = np.empty(N + 1)
    cdef Py_ssize_t i, k, v
    cdef double xi, acc, lx, xp

    for k in range(1, N + 1):
        rpow[k] = rpow[k - 1] * r
        ints[k] = ints[k - 1] + rpow[k - 1]

    if not use_log:
        coef[0] = 1.0
        for k in range(N):
            coef[k + 1] = coef[k] * ints[N - k] / ints[k + 1]
        for i in range(nx):
            xi = x[i]
            fall[0] = 1.0
            for k in range(N):
                fall[k + 1] = fall[k] * (1.0 - rpow[k] * xi)
            xp = 1.0
            for v in range(N + 1):
                out[i, v] = coef[v] * xp * fall[N - v]
                xp *= xi
        return out_arr

    # log space: coef holds log C(N,v)_r, fall holds log falling products
    coef[0] = 0.0
    acc = 0.0
    for k in range(1, N + 1):
        acc += log(ints[k])
        coef[k] = acc
    acc = coef[N]
    for v in range(N + 1):
        fall[v] = coef[v]
    for v in range(N + 1):
        coef[v] = acc - fall[v] - fall[N - v]
    for i in range(nx):
        xi = x[i]
        lx = log(xi) if xi > 0.0 else -INFINITY
        fall[0] = 0.0
        for k in range(N):
            acc = 1.0 - rpow[k] * xi
            fall[k + 1] = fall[k] + (log(acc) if acc > 0.0 else -INFINITY)
        for v in range(N + 1):
            acc = coef[v] + fall[N - v]
            if v > 0:
                acc += v * lx
            out[i, v] = exp(acc)
    return out_arr


def modulus_profile(values, Py_ssize_t kmax):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    if kmax > n - 1:
        kmax = n - 1
    if kmax < 0:
        kmax = 0
    prof_arr = np.zeros(kmax + 1)
    cdef double[::1] prof = prof_arr
    cdef double run = 0.0, d
    cdef Py_ssize_t i, j
    for j in range(1, kmax + 1):
        for i in range(n - j):
            d = fabs(v[i + j] - v[i])
            if d > run:
                run = d
        prof[j] = run
    return prof_arr


def second_difference_profile(values, Py_ssize_t kmax):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    if kmax > (n - 1) // 2:
        kmax = (n - 1) // 2
    if kmax < 0:
        kmax = 0
    prof_arr = np.zeros(kmax + 1)
    cdef double[::1] prof = prof_arr
    cdef double run = 0.0, d
    cdef Py_ssize_t i, j
    for j in range(1, kmax + 1):
        for i in range(n - 2 * j):
            d = fabs(v[i + 2 * j] - 2.0 * v[i + j] + v[i])
            if d > run:
                run = d
        prof[j] = run
    return prof_arr


def lipschitz_max(values, double step, double a):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    cdef double best = 0.0, m, d
    cdef Py_ssize_t i, j
    for j in range(1, n):
        m = 0.0
        for i in range(n - j):
            d = fabs(v[i + j] - v[i])
            if d > m:
                m = d
        m = m / pow(j * step, a)
        if m > best:
            best = m
    return best
