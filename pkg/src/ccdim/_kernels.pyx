# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over 64-bit vertex bitmasks.

Same contract as ``_kernels_py``; callers must route complexes with more than
64 hyperplanes to the pure-Python module.
"""
import numpy as np

from cython.parallel cimport prange
from libc.stdint cimport uint64_t, int32_t
from libc.stdlib cimport malloc, free, qsort

MAX_BITS = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<uint64_t *>a)[0]
    cdef uint64_t y = (<uint64_t *>b)[0]
    return (x > y) - (x < y)


cdef bint _contains(const uint64_t *sorted_vals, Py_ssize_t n, uint64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if sorted_vals[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < n and sorted_vals[lo] == key


cdef uint64_t *_to_buffer(masks, Py_ssize_t n) except NULL:
    cdef uint64_t *buf = <uint64_t *>malloc(max(n, 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <uint64_t>masks[i]
    return buf


def majority_witness(masks):
    cdef Py_ssize_t n = len(masks)
    cdef uint64_t *vals = _to_buffer(masks, n)
    cdef uint64_t *srt = _to_buffer(masks, n)
    cdef Py_ssize_t i, j, k
    cdef uint64_t a, ab, aob, m
    cdef Py_ssize_t fi = -1, fj = -1, fk = -1
    try:
        qsort(srt, n, sizeof(uint64_t), _cmp_u64)
        with nogil:
            for i in range(n):
                a = vals[i]
                for j in range(i + 1, n):
                    ab = a & vals[j]
                    aob = a | vals[j]
                    for k in range(j + 1, n):
                        m = ab | (aob & vals[k])
                        if not _contains(srt, n, m):
                            fi = i
                            fj = j
                            fk = k
                            break
                    if fi >= 0:
                        break
                if fi >= 0:
                    break
    finally:
        free(vals)
        free(srt)
    if fi < 0:
        return None
    return fi, fj, fk


def majority_closure(masks):
    members = list(dict.fromkeys(int(m) for m in masks))
    present = set(members)
    cdef Py_ssize_t start = 0, stop, i, j, k
    cdef uint64_t a, b, c, m
    while start < len(members):
        stop = len(members)
        for k in range(start, stop):
            c = members[k]
            for i in range(stop):
                a = members[i]
                for j in range(i + 1, stop):
                    b = members[j]
                    m = (a & b) | (b & c) | (a & c)
                    if m not in present:
                        present.add(m)
                        members.append(m)
        start = stop
    return sorted(members)


def pairwise_hamming(masks, int num_threads=0):
    cdef Py_ssize_t n = len(masks)
    out = np.zeros((n, n), dtype=np.int32)
    cdef int32_t[:, ::1] view = out
    cdef uint64_t *vals = _to_buffer(masks, n)
    cdef Py_ssize_t i, j
    cdef int32_t d
    if num_threads <= 0:
        num_threads = 1
    try:
        for i in prange(n, nogil=True, num_threads=num_threads, schedule="dynamic"):
            for j in range(n):
                view[i, j] = __builtin_popcountll(vals[i] ^ vals[j])
    finally:
        free(vals)
    return out


cdef int _expand(const uint64_t *adj, uint64_t cand, int size, int best, int target) noexcept nogil:
    cdef int v
    cdef uint64_t nxt
    while cand:
        if size + __builtin_popcountll(cand) <= best:
            return best
        v = 63 - __builtin_clzll(cand)
        cand &= ~((<uint64_t>1) << v)
        nxt = cand & adj[v]
        if nxt:
            best = _expand(adj, nxt, size + 1, best, target)
        elif size + 1 > best:
            best = size + 1
        if best >= target:
            return best
    return best


def max_clique(adj, candidates):
    cdef uint64_t cand = <uint64_t>candidates
    if cand == 0:
        return 0
    cdef Py_ssize_t n = len(adj)
    cdef uint64_t *buf = _to_buffer(adj, n)
    cdef int result
    try:
        with nogil:
            result = _expand(buf, cand, 0, 0, __builtin_popcountll(cand) + 1)
    finally:
        free(buf)
    return result


def has_clique(adj, candidates, int k):
    if k <= 0:
        return True
    cdef uint64_t cand = <uint64_t>candidates
    if __builtin_popcountll(cand) < k:
        return False
    cdef Py_ssize_t n = len(adj)
    cdef uint64_t *buf = _to_buffer(adj, n)
    cdef int result
    try:
        with nogil:
            result = _expand(buf, cand, 0, 0, k)
    finally:
        free(buf)
    return result >= k
