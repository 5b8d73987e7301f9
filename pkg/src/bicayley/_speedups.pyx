# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in :mod:`bicayley._pure`."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memset
from cpython.bytes cimport PyBytes_FromStringAndSize

cnp.import_array()

BACKEND = "cython"


def refine(int[::1] indptr, int[::1] indices, int[::1] lab, int[::1] cell_of,
           int[::1] cell_end, splitters):
    cdef Py_ssize_t n = lab.shape[0]
    cdef int *queue = <int *> malloc((n + 1) * sizeof(int))
    cdef char *inq = <char *> malloc(n + 1)
    cdef int *cnt = <int *> malloc(n * sizeof(int))
    cdef int *touched = <int *> malloc(n * sizeof(int))
    cdef char *ctouch = <char *> malloc(n + 1)
    cdef int *tmp = <int *> malloc(n * sizeof(int))
    cdef int *hist_key = <int *> malloc(n * sizeof(int))
    cdef int qhead = 0, qlen = 0, s, p, q, w, u, c, ce, ntouched, i, j, k0
    cdef int start, end, key, m, t, v
    cdef bint uniform
    if not (queue and inq and cnt and touched and ctouch and tmp and hist_key):
        raise MemoryError()
    try:
        memset(inq, 0, n + 1)
        memset(ctouch, 0, n + 1)
        memset(cnt, 0, n * sizeof(int))
        for s in splitters:
            if not inq[s]:
                inq[s] = 1
                queue[(qhead + qlen) % (n + 1)] = s
                qlen += 1
        while qlen > 0:
            s = queue[qhead]
            qhead = (qhead + 1) % (n + 1)
            qlen -= 1
            inq[s] = 0
            ntouched = 0
            for p in range(s, cell_end[s]):
                w = lab[p]
                for q in range(indptr[w], indptr[w + 1]):
                    u = indices[q]
                    cnt[u] += 1
                    c = cell_of[u]
                    if not ctouch[c]:
                        ctouch[c] = 1
                        touched[ntouched] = c
                        ntouched += 1
            _isort(touched, ntouched)
            for i in range(ntouched):
                c = touched[i]
                ctouch[c] = 0
                ce = cell_end[c]
                if ce - c == 1:
                    continue
                k0 = cnt[lab[c]]
                uniform = True
                for p in range(c + 1, ce):
                    if cnt[lab[p]] != k0:
                        uniform = False
                        break
                if uniform:
                    continue
                # stable sort of the cell by neighbour count
                m = ce - c
                for p in range(m):
                    tmp[p] = lab[c + p]
                    hist_key[p] = cnt[tmp[p]]
                _stable_sort_by_key(tmp, hist_key, m)
                for p in range(m):
                    lab[c + p] = tmp[p]
                start = c
                key = hist_key[0]
                for p in range(1, m + 1):
                    if p == m or hist_key[p] != key:
                        end = c + p
                        cell_end[start] = end
                        for t in range(start, end):
                            cell_of[lab[t]] = start
                        if not inq[start]:
                            inq[start] = 1
                            queue[(qhead + qlen) % (n + 1)] = start
                            qlen += 1
                        start = end
                        if p < m:
                            key = hist_key[p]
            # reset counts
            for j in range(n):
                cnt[j] = 0
    finally:
        free(queue); free(inq); free(cnt); free(touched); free(ctouch)
        free(tmp); free(hist_key)


cdef void _isort(int *a, int m) noexcept nogil:
    cdef int i, j, x
    for i in range(1, m):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


cdef void _stable_sort_by_key(int *vals, int *keys, int m) noexcept nogil:
    # insertion sort: cells are small and often nearly sorted
    cdef int i, j, xv, xk
    for i in range(1, m):
        xv = vals[i]
        xk = keys[i]
        j = i - 1
        while j >= 0 and keys[j] > xk:
            vals[j + 1] = vals[j]
            keys[j + 1] = keys[j]
            j -= 1
        vals[j + 1] = xv
        keys[j + 1] = xk


def leaf_key(int[::1] indptr, int[::1] indices, int[::1] lab):
    cdef Py_ssize_t n = lab.shape[0]
    cdef Py_ssize_t total = n + indices.shape[0]
    cdef cnp.ndarray[cnp.uint16_t, ndim=1] out = np.empty(total, dtype=np.uint16)
    cdef int *inv = <int *> malloc(n * sizeof(int))
    cdef int i, v, q, pos = 0, deg, a, b, x
    if not inv:
        raise MemoryError()
    try:
        for i in range(n):
            inv[lab[i]] = i
        for i in range(n):
            v = lab[i]
            deg = indptr[v + 1] - indptr[v]
            out[pos] = deg
            pos += 1
            for q in range(indptr[v], indptr[v + 1]):
                x = inv[indices[q]]
                a = pos
                while a > pos - (q - indptr[v]) and out[a - 1] > x:
                    out[a] = out[a - 1]
                    a -= 1
                out[a] = x
                pos += 1
    finally:
        free(inv)
    return out.astype(">u2").tobytes()


def closure(gens, Py_ssize_t cap):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] g = np.ascontiguousarray(gens, dtype=np.int32)
    cdef Py_ssize_t r = g.shape[0], d = g.shape[1]
    cdef Py_ssize_t head = 0, count = 1, i, x, size = 1024
    cdef cnp.ndarray[cnp.int32_t, ndim=2] buf = np.empty((size, d), dtype=np.int32)
    cdef int[:, ::1] bv = buf
    cdef int[:, ::1] gv = g
    cdef set seen
    for x in range(d):
        bv[0, x] = x
    seen = {PyBytes_FromStringAndSize(<char *> &bv[0, 0], d * 4)}
    while head < count:
        for i in range(r):
            if count == size:
                size *= 2
                buf = np.concatenate([buf, np.empty_like(buf)])
                bv = buf
            for x in range(d):
                bv[count, x] = gv[i, bv[head, x]]
            key = PyBytes_FromStringAndSize(<char *> &bv[count, 0], d * 4)
            if key not in seen:
                seen.add(key)
                count += 1
                if count > cap:
                    raise OverflowError(count)
        head += 1
    return buf[:count].copy()


cdef long long _walk(int[::1] indptr, int[::1] indices, int v, int prev,
                     int left) noexcept nogil:
    cdef long long total = 0
    cdef int q, u
    if left == 0:
        return 1
    for q in range(indptr[v], indptr[v + 1]):
        u = indices[q]
        if u != prev:
            total += _walk(indptr, indices, u, v, left - 1)
    return total


def count_s_arcs(int[::1] indptr, int[::1] indices, int s):
    cdef int n = indptr.shape[0] - 1, v
    cdef long long total = 0
    for v in range(n):
        total += _walk(indptr, indices, v, -1, s)
    return int(total)
