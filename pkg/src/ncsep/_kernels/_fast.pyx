# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Semantics must match ``_py.py`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def harper_profile(int m):
    cdef Py_ssize_t size = (<Py_ssize_t>1 << m) + 1
    out_arr = np.empty(size, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef int *c = <int *>malloc((m + 1) * sizeof(int))
    cdef int k, i
    cdef cnp.int64_t b = m
    cdef Py_ssize_t pos = 2
    if c == NULL:
        raise MemoryError()
    out[0] = 0
    out[1] = m
    try:
        for k in range(1, m + 1):
            for i in range(k):
                c[i] = i
            while True:
                b += m - 2 - c[k - 1]
                out[pos] = b
                pos += 1
                # next k-combination of range(m) in lexicographic order
                i = k - 1
                while i >= 0 and c[i] == m - k + i:
                    i -= 1
                if i < 0:
                    break
                c[i] += 1
                i += 1
                while i < k:
                    c[i] = c[i - 1] + 1
                    i += 1
    finally:
        free(c)
    return out_arr


def refine_pass(adj_in, cnp.int8_t[::1] labels, order_in, Py_ssize_t lo, Py_ssize_t hi):
    cdef const cnp.int64_t[:, ::1] adj = np.ascontiguousarray(adj_in, dtype=np.int64)
    cdef const cnp.int64_t[::1] order = np.ascontiguousarray(order_in, dtype=np.int64)
    cdef Py_ssize_t n = adj.shape[0]
    cdef int deg = adj.shape[1]
    cdef Py_ssize_t counts[2]
    locked_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] locked = locked_arr
    log_v_arr = np.empty(order.shape[0] * (deg + 1), dtype=np.int64)
    log_o_arr = np.empty(order.shape[0] * (deg + 1), dtype=np.int8)
    cdef cnp.int64_t[::1] log_v = log_v_arr
    cdef cnp.int8_t[::1] log_o = log_o_arr
    cdef Py_ssize_t nlog = 0, best_len = 0, idx, x, nb
    cdef Py_ssize_t cur = 0, best = 0
    cdef int t, opp, j, pulled, ok, best_t, best_gain, best_pull
    counts[0] = 0
    counts[1] = 0
    for idx in range(n):
        if labels[idx] == 0:
            counts[0] += 1
        elif labels[idx] == 1:
            counts[1] += 1
    for idx in range(order.shape[0]):
        x = order[idx]
        if locked[x] or labels[x] != 2:
            continue
        best_t = -1
        best_gain = -1
        best_pull = 0
        for t in range(2):
            opp = 1 - t
            pulled = 0
            ok = 1
            for j in range(deg):
                nb = adj[x, j]
                if labels[nb] == opp:
                    if locked[nb]:
                        ok = 0
                        break
                    pulled += 1
            if not ok:
                continue
            if counts[t] + 1 > hi or counts[opp] - pulled < lo:
                continue
            if 1 - pulled > best_gain:
                best_gain = 1 - pulled
                best_t = t
                best_pull = pulled
        if best_t < 0:
            continue
        opp = 1 - best_t
        log_v[nlog] = x
        log_o[nlog] = 2
        nlog += 1
        labels[x] = best_t
        locked[x] = 1
        for j in range(deg):
            nb = adj[x, j]
            if labels[nb] == opp:
                log_v[nlog] = nb
                log_o[nlog] = opp
                nlog += 1
                labels[nb] = 2
                locked[nb] = 1
        counts[best_t] += 1
        counts[opp] -= best_pull
        cur -= best_gain
        if cur <= best:
            best = cur
            best_len = nlog
    for idx in range(nlog - 1, best_len - 1, -1):
        labels[log_v[idx]] = log_o[idx]
    return best
