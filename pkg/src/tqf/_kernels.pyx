# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled permutation-sum kernel."""
from cython.parallel cimport prange

import numpy as np


def gather_accumulate(out, x, idx, coeffs, int num_threads=1):
    """out[i] += sum_p coeffs[p] * x[idx[p, i]], terms added in order of p.

    Each output entry is owned by one thread, so the result does not depend
    on ``num_threads``.
    """
    cdef double[:, ::1] o = out.view(np.float64).reshape(-1, 2)
    cdef const double[:, ::1] xv = np.ascontiguousarray(x).view(np.float64).reshape(-1, 2)
    cdef const long long[:, ::1] iv = np.ascontiguousarray(idx, dtype=np.int64)
    cdef const double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef Py_ssize_t P = iv.shape[0]
    cdef Py_ssize_t N = iv.shape[1]
    cdef Py_ssize_t i, p
    cdef long long j
    cdef double c
    if o.shape[0] != N:
        raise ValueError("output length does not match index rows")
    if cv.shape[0] != P:
        raise ValueError("coefficient count does not match index rows")
    with nogil:
        for p in range(P):
            c = cv[p]
            for i in prange(N, schedule="static", num_threads=num_threads):
                j = iv[p, i]
                o[i, 0] += c * xv[j, 0]
                o[i, 1] += c * xv[j, 1]
    return out
