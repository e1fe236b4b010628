# cython: language_level=3
"""Compiled payoff kernels: per-pair scalar arithmetic over strategy
4-vectors.  Must stay behaviourally identical to qgame._kernels_np."""

from libc.math cimport cos, sin

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline void _amps(double cg, double sg,
                       double p0, double p1, double p2, double p3,
                       double q0, double q1, double q2, double q3,
                       double* re, double* im) nogil:
    cdef double s03 = p0 * q3 + p3 * q0
    cdef double s12 = p1 * q2 + p2 * q1
    cdef double a02 = p0 * q2 + p3 * q1
    cdef double a20 = p2 * q0 + p1 * q3
    re[0] = p0 * q0 - p3 * q3 - sg * s12
    im[0] = cg * s03
    re[1] = -cg * a02
    im[1] = p0 * q1 - p3 * q2 + sg * a20
    re[2] = -cg * a20
    im[2] = p1 * q0 - p2 * q3 + sg * a02
    re[3] = p2 * q2 - p1 * q1 + sg * s03
    im[3] = -cg * s12


def amplitude_batch(double gamma, double[:, ::1] ua, double[:, ::1] ub):
    cdef Py_ssize_t n = ua.shape[0]
    out = np.empty((n, 4), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double re[4]
    cdef double im[4]
    cdef double cg = cos(gamma), sg = sin(gamma)
    cdef Py_ssize_t i, k
    with nogil:
        for i in range(n):
            _amps(cg, sg, ua[i, 0], ua[i, 1], ua[i, 2], ua[i, 3],
                  ub[i, 0], ub[i, 1], ub[i, 2], ub[i, 3], re, im)
            for k in range(4):
                o[i, k] = re[k] + 1j * im[k]
    return out


def payoff_batch(double gamma, double[:, ::1] ua, double[:, ::1] ub,
                 double[:, ::1] a, double[:, ::1] b):
    cdef Py_ssize_t n = ua.shape[0]
    pay_a = np.empty(n)
    pay_b = np.empty(n)
    cdef double[::1] va = pay_a
    cdef double[::1] vb = pay_b
    cdef double re[4]
    cdef double im[4]
    cdef double cg = cos(gamma), sg = sin(gamma)
    cdef double a0 = a[0, 0], a1 = a[0, 1], a2 = a[1, 0], a3 = a[1, 1]
    cdef double b0 = b[0, 0], b1 = b[0, 1], b2 = b[1, 0], b3 = b[1, 1]
    cdef double p00, p01, p10, p11
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _amps(cg, sg, ua[i, 0], ua[i, 1], ua[i, 2], ua[i, 3],
                  ub[i, 0], ub[i, 1], ub[i, 2], ub[i, 3], re, im)
            p00 = re[0] * re[0] + im[0] * im[0]
            p01 = re[1] * re[1] + im[1] * im[1]
            p10 = re[2] * re[2] + im[2] * im[2]
            p11 = re[3] * re[3] + im[3] * im[3]
            va[i] = a0 * p00 + a1 * p01 + a2 * p10 + a3 * p11
            vb[i] = b0 * p00 + b1 * p01 + b2 * p10 + b3 * p11
    return pay_a, pay_b


def payoff_tables(double gamma, double[:, ::1] ua, double[:, ::1] ub,
                  double[:, ::1] a, double[:, ::1] b):
    cdef Py_ssize_t m = ua.shape[0], n = ub.shape[0]
    pay_a = np.empty((m, n))
    pay_b = np.empty((m, n))
    cdef double[:, ::1] va = pay_a
    cdef double[:, ::1] vb = pay_b
    cdef double re[4]
    cdef double im[4]
    cdef double cg = cos(gamma), sg = sin(gamma)
    cdef double a0 = a[0, 0], a1 = a[0, 1], a2 = a[1, 0], a3 = a[1, 1]
    cdef double b0 = b[0, 0], b1 = b[0, 1], b2 = b[1, 0], b3 = b[1, 1]
    cdef double p00, p01, p10, p11
    cdef double w, x, y, z
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(m):
            w = ua[i, 0]
            x = ua[i, 1]
            y = ua[i, 2]
            z = ua[i, 3]
            for j in range(n):
                _amps(cg, sg, w, x, y, z,
                      ub[j, 0], ub[j, 1], ub[j, 2], ub[j, 3], re, im)
                p00 = re[0] * re[0] + im[0] * im[0]
                p01 = re[1] * re[1] + im[1] * im[1]
                p10 = re[2] * re[2] + im[2] * im[2]
                p11 = re[3] * re[3] + im[3] * im[3]
                va[i, j] = a0 * p00 + a1 * p01 + a2 * p10 + a3 * p11
                vb[i, j] = b0 * p00 + b1 * p01 + b2 * p10 + b3 * p11
    return pay_a, pay_b


def quad_batch(double[:, ::1] matrix, double[:, ::1] us):
    cdef Py_ssize_t n = us.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double acc
    cdef Py_ssize_t i, r, c
    with nogil:
        for i in range(n):
            acc = 0.0
            for r in range(4):
                for c in range(4):
                    acc += us[i, r] * matrix[r, c] * us[i, c]
            o[i] = acc
    return out
