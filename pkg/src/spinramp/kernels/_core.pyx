# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels: single-qubit gate and CNOT application.

Mirrors the pure-numpy fallback in ``_numpy.py``; same bit convention
(site 0 = most significant bit), same in-place semantics.
"""

import numpy as np

BACKEND_NAME = "cython"


def apply_single_qubit(complex[::1] psi, int site, int n_sites, gate):
    cdef double complex g00 = gate[0, 0]
    cdef double complex g01 = gate[0, 1]
    cdef double complex g10 = gate[1, 0]
    cdef double complex g11 = gate[1, 1]
    cdef Py_ssize_t stride = 1 << (n_sites - 1 - site)
    cdef Py_ssize_t dim = 1 << n_sites
    cdef Py_ssize_t block = stride << 1
    cdef Py_ssize_t base, j, i0, i1
    cdef double complex a0, a1
    with nogil:
        for base in range(0, dim, block):
            for j in range(stride):
                i0 = base + j
                i1 = i0 + stride
                a0 = psi[i0]
                a1 = psi[i1]
                psi[i0] = g00 * a0 + g01 * a1
                psi[i1] = g10 * a0 + g11 * a1


def apply_cnot(complex[::1] psi, int control, int target, int n_sites):
    cdef Py_ssize_t cbit = 1 << (n_sites - 1 - control)
    cdef Py_ssize_t tbit = 1 << (n_sites - 1 - target)
    cdef Py_ssize_t dim = 1 << n_sites
    cdef Py_ssize_t i, j
    cdef double complex tmp
    with nogil:
        for i in range(dim):
            if (i & cbit) != 0 and (i & tbit) == 0:
                j = i | tbit
                tmp = psi[i]
                psi[i] = psi[j]
                psi[j] = tmp
