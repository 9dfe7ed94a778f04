# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Clifford kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef extern from *:
    int __builtin_popcountl(unsigned long) nogil


cdef inline int _parity(unsigned long x) nogil:
    return __builtin_popcountl(x) & 1


cdef inline int _sign(unsigned long a, unsigned long b) nogil:
    cdef int s = 0
    cdef int i = 0
    while (b >> i) != 0:
        if (b >> i) & 1:
            s += __builtin_popcountl(a >> (i + 1))
        i += 1
    return -1 if (s & 1) else 1


def blade_sign(unsigned long a, unsigned long b):
    return _sign(a, b)


def section_vector(word, int n):
    cdef Py_ssize_t size = 1 << n
    cdef cnp.ndarray[i64, ndim=1] v = np.zeros(size, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] out = np.zeros(size, dtype=np.int64)
    cdef i64[::1] vv = v
    cdef i64[::1] oo = out
    cdef i64[::1] tmp
    cdef Py_ssize_t a
    cdef int j, sj, sk
    cdef i64 acc
    cdef int halvings = 0
    vv[0] = 1
    for j in word:
        for a in range(size):
            oo[a] = 0
        for a in range(size):
            if vv[a] == 0:
                continue
            sj = -1 if _parity(a >> (j + 1)) else 1
            sk = -1 if _parity(a >> (j + 2)) else 1
            oo[a ^ (1 << j)] += sj * vv[a]
            oo[a ^ (1 << (j + 1))] -= sk * vv[a]
        tmp = vv
        vv = oo
        oo = tmp
        while True:
            acc = 0
            for a in range(size):
                acc |= vv[a]
            if acc == 0 or (acc & 1):
                break
            for a in range(size):
                vv[a] >>= 1
            halvings += 1
    return np.asarray(vv).copy(), halvings


def product_coefficient(const i64[::1] x, const i64[::1] y, unsigned long m):
    cdef Py_ssize_t a, size = x.shape[0]
    cdef i64 acc = 0
    for a in range(size):
        if x[a] != 0 and y[a ^ m] != 0:
            acc += _sign(a, a ^ m) * x[a] * y[a ^ m]
    return acc


def clifford_product(const i64[::1] x, const i64[::1] y):
    cdef Py_ssize_t a, b, size = x.shape[0]
    out = np.zeros(size, dtype=np.int64)
    cdef i64[::1] oo = out
    for a in range(size):
        if x[a] == 0:
            continue
        for b in range(size):
            if y[b] != 0:
                oo[a ^ b] += _sign(a, b) * x[a] * y[b]
    return out
