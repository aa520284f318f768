# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Max-Log-MAP kernels; mirror ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t

cnp.import_array()

cdef int64_t MANT_MIN = -(1 << 19)
cdef int64_t MANT_MAX = (1 << 19) - 1
cdef double NEG_INF = -np.inf


cdef inline int64_t sat(int64_t v, long *count) noexcept nogil:
    if v > MANT_MAX:
        count[0] += 1
        return MANT_MAX
    if v < MANT_MIN:
        count[0] += 1
        return MANT_MIN
    return v


def branch_metrics_ref(cs, cp, apriori, double lc):
    cdef double[::1] c = np.ascontiguousarray(cs, dtype=np.float64)
    cdef double[::1] p = np.ascontiguousarray(cp, dtype=np.float64)
    cdef double[::1] la = np.ascontiguousarray(apriori, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0], k
    g1 = np.empty(n)
    g2 = np.empty(n)
    cdef double[::1] o1 = g1, o2 = g2
    for k in range(n):
        o1[k] = 0.5 * (la[k] + lc * (c[k] + p[k]))
        o2[k] = 0.5 * (la[k] + lc * (c[k] - p[k]))
    return g1, g2


def forward_ref(g1, g2, next_state, group, double[:, ::1] alpha, bint normalize=False):
    cdef double[::1] a1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] a2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef double g, a, v, top
    cdef double new[8]
    with nogil:
        for k in range(n):
            for m in range(8):
                new[m] = NEG_INF
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                a = alpha[k, m]
                v = a - g
                if v > new[nxt[m, 0]]:
                    new[nxt[m, 0]] = v
                v = a + g
                if v > new[nxt[m, 1]]:
                    new[nxt[m, 1]] = v
            if normalize:
                top = new[0]
                for m in range(1, 8):
                    if new[m] > top:
                        top = new[m]
                for m in range(8):
                    new[m] = new[m] - top
            for m in range(8):
                alpha[k + 1, m] = new[m]
    return 0


def backward_ref(g1, g2, next_state, group, double[:, ::1] beta, bint normalize=False):
    cdef double[::1] a1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] a2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef double g, b0, b1, top
    cdef double new[8]
    with nogil:
        for k in range(n - 1, -1, -1):
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                b0 = beta[k + 1, nxt[m, 0]] - g
                b1 = beta[k + 1, nxt[m, 1]] + g
                new[m] = b1 if b1 > b0 else b0
            if normalize:
                top = new[0]
                for m in range(1, 8):
                    if new[m] > top:
                        top = new[m]
                for m in range(8):
                    new[m] = new[m] - top
            for m in range(8):
                beta[k, m] = new[m]
    return 0


def llr_ref(g1, g2, double[:, ::1] alpha, double[:, ::1] beta, next_state, group):
    cdef double[::1] a1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] a2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef double g, v, best1, best0
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for k in range(n):
            best1 = NEG_INF
            best0 = NEG_INF
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                v = alpha[k, m] + beta[k + 1, nxt[m, 1]] + g
                if v > best1:
                    best1 = v
                v = alpha[k, m] + beta[k + 1, nxt[m, 0]] - g
                if v > best0:
                    best0 = v
            o[k] = best1 - best0
    return out


def branch_metrics_fxp(cs, cp, apriori, int64_t lc):
    cdef int64_t[::1] c = np.ascontiguousarray(cs, dtype=np.int64)
    cdef int64_t[::1] p = np.ascontiguousarray(cp, dtype=np.int64)
    cdef int64_t[::1] la = np.ascontiguousarray(apriori, dtype=np.int64)
    cdef Py_ssize_t n = c.shape[0], k
    cdef long count = 0
    cdef int64_t s, d
    g1 = np.empty(n, dtype=np.int64)
    g2 = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o1 = g1, o2 = g2
    with nogil:
        for k in range(n):
            s = sat(c[k] + p[k], &count)
            d = sat(c[k] - p[k], &count)
            # >> on signed int64 is arithmetic (floor) with gcc/clang
            o1[k] = sat(la[k] + sat((lc * s) >> 10, &count), &count) >> 1
            o2[k] = sat(la[k] + sat((lc * d) >> 10, &count), &count) >> 1
    return g1, g2, count


def forward_fxp(g1, g2, next_state, group, int64_t[:, ::1] alpha, bint normalize=True):
    cdef int64_t[::1] a1 = np.ascontiguousarray(g1, dtype=np.int64)
    cdef int64_t[::1] a2 = np.ascontiguousarray(g2, dtype=np.int64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef long count = 0
    cdef int64_t g, a, v, top
    cdef int64_t new[8]
    cdef bint seen[8]
    with nogil:
        for k in range(n):
            for m in range(8):
                seen[m] = False
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                a = alpha[k, m]
                v = sat(a + sat(-g, &count), &count)
                if not seen[nxt[m, 0]] or v > new[nxt[m, 0]]:
                    new[nxt[m, 0]] = v
                    seen[nxt[m, 0]] = True
                v = sat(a + g, &count)
                if not seen[nxt[m, 1]] or v > new[nxt[m, 1]]:
                    new[nxt[m, 1]] = v
                    seen[nxt[m, 1]] = True
            if normalize:
                top = new[0]
                for m in range(1, 8):
                    if new[m] > top:
                        top = new[m]
                for m in range(8):
                    new[m] = sat(new[m] - top, &count)
            for m in range(8):
                alpha[k + 1, m] = new[m]
    return count


def backward_fxp(g1, g2, next_state, group, int64_t[:, ::1] beta, bint normalize=True):
    cdef int64_t[::1] a1 = np.ascontiguousarray(g1, dtype=np.int64)
    cdef int64_t[::1] a2 = np.ascontiguousarray(g2, dtype=np.int64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef long count = 0
    cdef int64_t g, b0, b1, top
    cdef int64_t new[8]
    with nogil:
        for k in range(n - 1, -1, -1):
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                b0 = sat(beta[k + 1, nxt[m, 0]] + sat(-g, &count), &count)
                b1 = sat(beta[k + 1, nxt[m, 1]] + g, &count)
                new[m] = b1 if b1 > b0 else b0
            if normalize:
                top = new[0]
                for m in range(1, 8):
                    if new[m] > top:
                        top = new[m]
                for m in range(8):
                    new[m] = sat(new[m] - top, &count)
            for m in range(8):
                beta[k, m] = new[m]
    return count


def llr_fxp(g1, g2, int64_t[:, ::1] alpha, int64_t[:, ::1] beta, next_state, group):
    cdef int64_t[::1] a1 = np.ascontiguousarray(g1, dtype=np.int64)
    cdef int64_t[::1] a2 = np.ascontiguousarray(g2, dtype=np.int64)
    cdef int32_t[:, ::1] nxt = np.ascontiguousarray(next_state, dtype=np.int32)
    cdef int32_t[::1] grp = np.ascontiguousarray(group, dtype=np.int32)
    cdef Py_ssize_t n = a1.shape[0], k, m
    cdef long count = 0
    cdef int64_t g, v, best1, best0
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for k in range(n):
            for m in range(8):
                g = a1[k] if grp[m] == 0 else a2[k]
                v = sat(sat(alpha[k, m] + beta[k + 1, nxt[m, 1]], &count) + g, &count)
                if m == 0 or v > best1:
                    best1 = v
                v = sat(sat(alpha[k, m] + beta[k + 1, nxt[m, 0]], &count) + sat(-g, &count), &count)
                if m == 0 or v > best0:
                    best0 = v
            o[k] = sat(best1 - best0, &count)
    return out, count
