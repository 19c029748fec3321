# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled packed-bitset kernels; same contracts as ``_pykernels``.

Every row loop runs without the GIL so a thread pool can split the rows.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int st_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int st_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    static inline int st_clz(unsigned long long x) { return __builtin_clzll(x); }
    """
    int st_popcount(unsigned long long x) nogil
    int st_ctz(unsigned long long x) nogil
    int st_clz(unsigned long long x) nogil


cdef inline bint _disjoint(const uint64_t[:, ::1] A, Py_ssize_t i,
                           const uint64_t[:, ::1] B, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(A.shape[1]):
        if A[i, k] & B[j, k]:
            return False
    return True


def disjoint_rows(const uint64_t[:, ::1] A, const uint64_t[:, ::1] B,
                  uint64_t[:, ::1] out, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t i, j, k
    with nogil:
        for i in range(lo, hi):
            for k in range(out.shape[1]):
                out[i, k] = 0
            for j in range(B.shape[0]):
                if _disjoint(A, i, B, j):
                    out[i, j >> 6] |= (<uint64_t>1) << (j & 63)


def closure(const int64_t[::1] indptr, const int64_t[::1] indices,
            const int64_t[::1] order, Py_ssize_t n, Py_ssize_t words):
    result = np.zeros((n, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] reach = result
    cdef Py_ssize_t t, v, s, k, w
    with nogil:
        for t in range(order.shape[0] - 1, -1, -1):
            v = order[t]
            reach[v, v >> 6] |= (<uint64_t>1) << (v & 63)
            for k in range(indptr[v], indptr[v + 1]):
                s = indices[k]
                for w in range(words):
                    reach[v, w] |= reach[s, w]
    return result


cdef inline Py_ssize_t _lowest(const uint64_t[:, ::1] X, Py_ssize_t i,
                               const uint64_t[:, ::1] Y, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t w
    cdef uint64_t x
    for w in range(X.shape[1]):
        x = X[i, w] & Y[j, w]
        if x:
            return (w << 6) + st_ctz(x)
    return -1


cdef inline Py_ssize_t _highest(const uint64_t[:, ::1] X, Py_ssize_t i,
                                const uint64_t[:, ::1] Y, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t w
    cdef uint64_t x
    for w in range(X.shape[1] - 1, -1, -1):
        x = X[i, w] & Y[j, w]
        if x:
            return (w << 6) + 63 - st_clz(x)
    return -1


cdef inline bint _inside(const uint64_t[:, ::1] X, Py_ssize_t i, Py_ssize_t j,
                         Py_ssize_t z) noexcept nogil:
    # (X[i] & X[j]) is a subset of X[z]
    cdef Py_ssize_t w
    for w in range(X.shape[1]):
        if X[i, w] & X[j, w] & ~X[z, w]:
            return False
    return True


def lattice_rows(const uint64_t[:, ::1] up, const uint64_t[:, ::1] down,
                 Py_ssize_t lo, Py_ssize_t hi, int64_t[::1] best):
    cdef Py_ssize_t n = up.shape[0]
    cdef Py_ssize_t i, j, z
    cdef Py_ssize_t fi = -1, fj = -1
    cdef int kind = -1
    with nogil:
        for i in range(lo, hi):
            if i > best[0]:
                break
            for j in range(i + 1, n):
                z = _lowest(up, i, up, j)
                if z < 0 or not _inside(up, i, j, z):
                    kind = 0
                else:
                    z = _highest(down, i, down, j)
                    if z < 0 or not _inside(down, i, j, z):
                        kind = 1
                if kind >= 0:
                    fi = i
                    fj = j
                    if i < best[0]:
                        best[0] = i
                    break
            if kind >= 0:
                break
    if kind < 0:
        return None
    return fi, fj, kind


def cover_rows(const uint64_t[:, ::1] up, const uint64_t[:, ::1] down,
               Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = up.shape[0]
    cdef Py_ssize_t words = up.shape[1]
    cdef Py_ssize_t i, j, w, k
    cdef int count
    buf = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] found = buf
    cdef Py_ssize_t used
    out = []
    for i in range(lo, hi):
        used = 0
        with nogil:
            for j in range(n):
                if j == i or not (up[i, j >> 6] >> (j & 63)) & 1:
                    continue
                count = 0
                for w in range(words):
                    count += st_popcount(up[i, w] & down[j, w])
                    if count > 2:
                        break
                if count == 2:
                    found[used] = j
                    used += 1
        for k in range(used):
            out.append((i, int(found[k])))
    return out
