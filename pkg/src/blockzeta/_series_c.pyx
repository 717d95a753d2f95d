# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _series_py: same API, same fixed-point semantics.

The mantissas stay arbitrary-precision Python integers (they exceed any
machine word at useful precision), so every arithmetic step must run on
PyObject operands; the win over the pure kernel comes from compiling
the loop and indexing machinery.
"""

KERNEL = "cython"


cpdef list g_init(Py_ssize_t M, Py_ssize_t F):
    cdef list C = [0] * (M + 1)
    cdef Py_ssize_t n
    cdef object one = (<object> 1) << F
    for n in range(1, M + 1):
        C[n] = -(one // n)
    return C


cpdef list g_append(list C, int bit, Py_ssize_t M, Py_ssize_t F):
    cdef list D = [0] * (M + 1)
    cdef Py_ssize_t n, m
    cdef object s
    if bit == 0:
        for n in range(1, M + 1):
            D[n] = C[n] // n
        return D
    s = 0
    for m in range(1, M):
        s = s + C[m]
        D[m + 1] = -(s // (m + 1))
    return D


cpdef object g_value(list C, Py_ssize_t M, Py_ssize_t F):
    cdef Py_ssize_t n
    cdef object v = 0
    for n in range(M, 0, -1):
        v = C[n] + (v >> 1)
    return v >> 1
