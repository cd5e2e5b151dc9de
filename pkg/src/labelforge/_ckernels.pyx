# cython: language_level=3
"""Compiled inner loops for the low-crossing spanning tree builder.

Cost matrices are int64. Callers switch to the object-dtype fallback before
any entry could overflow.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def pair_argmin(int64_t[:, ::1] cost, int64_t[::1] comp):
    """Lexicographically first ``(u, v)``, ``u < v``, in different components
    minimising ``cost[u, v]``. Returns ``(-1, -1)`` if no such pair exists."""
    cdef Py_ssize_t n = cost.shape[0]
    cdef Py_ssize_t u, v
    cdef Py_ssize_t bu = -1, bv = -1
    cdef int64_t best = 0
    cdef int64_t cu, c
    with nogil:
        for u in range(n):
            cu = comp[u]
            for v in range(u + 1, n):
                if comp[v] == cu:
                    continue
                c = cost[u, v]
                if bu < 0 or c < best:
                    best = c
                    bu = u
                    bv = v
    return bu, bv


def add_crossing_weight(int64_t[:, ::1] cost, uint8_t[::1] s, int64_t w):
    """``cost[x, y] += w`` for every pair separated by the set ``s``."""
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i, j, x, y, n1 = 0, n0 = 0
    cdef cnp.ndarray[cnp.intp_t, ndim=1] ones_arr = np.empty(n, dtype=np.intp)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] zeros_arr = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] ones = ones_arr
    cdef cnp.intp_t[::1] zeros = zeros_arr
    with nogil:
        for i in range(n):
            if s[i]:
                ones[n1] = i
                n1 += 1
            else:
                zeros[n0] = i
                n0 += 1
        for i in range(n1):
            x = ones[i]
            for j in range(n0):
                y = zeros[j]
                cost[x, y] += w
                cost[y, x] += w


def row_alternations(uint8_t[:, ::1] mat):
    """Alternation count of every row."""
    cdef Py_ssize_t m = mat.shape[0], n = mat.shape[1]
    cdef Py_ssize_t r, i
    cdef int64_t acc
    out_arr = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    with nogil:
        for r in range(m):
            acc = 0
            for i in range(1, n):
                acc += mat[r, i] != mat[r, i - 1]
            out[r] = acc
    return out_arr
