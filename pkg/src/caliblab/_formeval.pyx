# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Cython implementation of the hot form-evaluation kernels.

Semantics match _formeval_py exactly; see that module for the contract.
Frames are processed as a flat batch with explicit small-matrix LU
determinants, which avoids per-minor LAPACK dispatch overhead.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

DEF MAX_GRADE = 16


cdef double _det_lu(double* a, int m) nogil:
    """In-place LU determinant with partial pivoting for an m x m buffer."""
    cdef int i, j, k, piv
    cdef double maxv, tmp, factor, det = 1.0
    for k in range(m):
        piv = k
        maxv = a[k * m + k]
        if maxv < 0:
            maxv = -maxv
        for i in range(k + 1, m):
            tmp = a[i * m + k]
            if tmp < 0:
                tmp = -tmp
            if tmp > maxv:
                maxv = tmp
                piv = i
        if maxv == 0.0:
            return 0.0
        if piv != k:
            det = -det
            for j in range(m):
                tmp = a[k * m + j]
                a[k * m + j] = a[piv * m + j]
                a[piv * m + j] = tmp
        det *= a[k * m + k]
        for i in range(k + 1, m):
            factor = a[i * m + k] / a[k * m + k]
            for j in range(k + 1, m):
                a[i * m + j] -= factor * a[k * m + j]
    return det


def form_values(coeffs, subsets, frames):
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    shape = frames.shape[:-2]
    cdef int nd = frames.ndim
    cdef int N = frames.shape[nd - 2]
    cdef int m = frames.shape[nd - 1]
    if m > MAX_GRADE:
        raise ValueError("grade too large for the compiled kernel")
    flat = frames.reshape(-1, N, m)
    cdef double[:, :, ::1] V = flat
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef long[:, ::1] S = np.ascontiguousarray(subsets, dtype=np.int64)
    cdef Py_ssize_t B = V.shape[0], nsub = S.shape[0]
    out = np.zeros(B)
    cdef double[::1] o = out
    cdef double buf[MAX_GRADE * MAX_GRADE]
    cdef Py_ssize_t b, s
    cdef int i, j
    with nogil:
        for b in range(B):
            for s in range(nsub):
                for i in range(m):
                    for j in range(m):
                        buf[i * m + j] = V[b, S[s, i], j]
                o[b] += c[s] * _det_lu(buf, m)
    return out.reshape(shape)


def form_values_grads(coeffs, subsets, frames, subsets1, contract):
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    shape = frames.shape
    cdef int nd = frames.ndim
    cdef int N = frames.shape[nd - 2]
    cdef int m = frames.shape[nd - 1]
    if m > MAX_GRADE:
        raise ValueError("grade too large for the compiled kernel")
    flat = frames.reshape(-1, N, m)
    cdef double[:, :, ::1] V = flat
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef long[:, ::1] S = np.ascontiguousarray(subsets, dtype=np.int64)
    cdef long[:, ::1] S1 = np.ascontiguousarray(subsets1, dtype=np.int64)
    cdef double[:, ::1] C1 = np.ascontiguousarray(contract, dtype=np.float64)
    cdef Py_ssize_t B = V.shape[0], nsub = S.shape[0], nsub1 = S1.shape[0]
    vals = np.zeros(B)
    grads = np.zeros((B, N, m))
    w = np.zeros(nsub1)
    cdef double[::1] o = vals
    cdef double[:, :, ::1] G = grads
    cdef double[::1] wv = w
    cdef double buf[MAX_GRADE * MAX_GRADE]
    cdef Py_ssize_t b, s
    cdef int i, j, k, col, sign
    cdef double acc
    with nogil:
        for b in range(B):
            for s in range(nsub):
                for i in range(m):
                    for j in range(m):
                        buf[i * m + j] = V[b, S[s, i], j]
                o[b] += c[s] * _det_lu(buf, m)
            sign = 1
            for k in range(m):
                # minors of the frame with column k removed
                for s in range(nsub1):
                    if m == 1:
                        wv[s] = 1.0
                        continue
                    col = 0
                    for j in range(m):
                        if j == k:
                            continue
                        for i in range(m - 1):
                            buf[i * (m - 1) + col] = V[b, S1[s, i], j]
                        col += 1
                    wv[s] = _det_lu(buf, m - 1)
                for i in range(N):
                    acc = 0.0
                    for s in range(nsub1):
                        acc += C1[i, s] * wv[s]
                    G[b, i, k] = sign * acc
                sign = -sign
    return vals.reshape(shape[:-2]), grads.reshape(shape)
