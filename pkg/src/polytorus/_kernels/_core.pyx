# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: evaluation of sparse trigonometric polynomials on
uniform tensor grids.

The NumPy fallback makes several full passes over the N^d grid per term;
here each term is written in a single fused pass, with the cross-axis
prefix product carried by an odometer and the complex arithmetic spelled
out in doubles so the inner loop vectorizes.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND = "cython"


def grid_evaluate(alphas, coeffs, int n, int dim):
    cdef cnp.int64_t[:, :] al = np.ascontiguousarray(alphas, dtype=np.int64)
    coeffs_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double[:] cf = coeffs_arr.view(np.float64)
    cdef Py_ssize_t nterms = al.shape[0]
    cdef Py_ssize_t total = 1
    cdef int j
    for j in range(dim):
        total *= n

    out_arr = np.zeros(total, dtype=np.complex128)
    cdef double[:] out = out_arr.view(np.float64)
    if nterms == 0 or total == 0:
        return out_arr

    # per-axis phase tables for one term: exp(i alpha_j 2 pi m / n)
    tab_arr = np.empty((dim, n, 2), dtype=np.float64)
    cdef double[:, :, :] tab = tab_arr
    pre_arr = np.empty((dim + 1, 2), dtype=np.float64)
    cdef double[:, :] prefix = pre_arr
    digits_arr = np.zeros(dim, dtype=np.int64)
    cdef cnp.int64_t[:] digits = digits_arr

    cdef Py_ssize_t t, m, idx, outer
    cdef int axis = 0
    cdef int last = dim - 1
    cdef double ang, step = 6.283185307179586476925287 / n
    cdef double pr, pi, tr, ti

    for t in range(nterms):
        for j in range(dim):
            for m in range(n):
                ang = al[t, j] * step * m
                tab[j, m, 0] = cos(ang)
                tab[j, m, 1] = sin(ang)
        for j in range(dim):
            digits[j] = 0
        # prefix[j] = coeff * prod_{i<j} tab[i, digits[i]]
        prefix[0, 0] = cf[2 * t]
        prefix[0, 1] = cf[2 * t + 1]
        for j in range(last):
            prefix[j + 1, 0] = prefix[j, 0] * tab[j, 0, 0] - prefix[j, 1] * tab[j, 0, 1]
            prefix[j + 1, 1] = prefix[j, 0] * tab[j, 0, 1] + prefix[j, 1] * tab[j, 0, 0]
        idx = 0
        for outer in range(total // n):
            pr = prefix[last, 0]
            pi = prefix[last, 1]
            for m in range(n):
                tr = tab[last, m, 0]
                ti = tab[last, m, 1]
                out[idx + 2 * m] += pr * tr - pi * ti
                out[idx + 2 * m + 1] += pr * ti + pi * tr
            idx += 2 * n
            # advance the odometer over the leading dim-1 axes
            for axis in range(last - 1, -1, -1):
                digits[axis] += 1
                if digits[axis] < n:
                    break
                digits[axis] = 0
            for j in range(axis, last):
                prefix[j + 1, 0] = (
                    prefix[j, 0] * tab[j, digits[j], 0] - prefix[j, 1] * tab[j, digits[j], 1]
                )
                prefix[j + 1, 1] = (
                    prefix[j, 0] * tab[j, digits[j], 1] + prefix[j, 1] * tab[j, digits[j], 0]
                )
    return out_arr
