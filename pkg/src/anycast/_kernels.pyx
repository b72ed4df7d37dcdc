# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Must stay bit-for-bit equivalent to _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def floyd_warshall(double[:, ::1] w):
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double dik, cand
    dist_arr = np.array(w, dtype=np.float64, copy=True)
    nxt_arr = np.empty((n, n), dtype=np.int64)
    cdef double[:, ::1] dist = dist_arr
    cdef long long[:, ::1] nxt = nxt_arr
    for i in range(n):
        for j in range(n):
            nxt[i, j] = j
    for k in range(n):
        for i in range(n):
            dik = dist[i, k]
            if dik == INFINITY:
                continue
            for j in range(n):
                cand = dik + dist[k, j]
                if cand < dist[i, j]:
                    dist[i, j] = cand
                    nxt[i, j] = nxt[i, k]
    return dist_arr, nxt_arr


cdef double _prim(double[:, ::1] w, long long[::1] idx, Py_ssize_t m,
                  long long[::1] parent, double[::1] key, char[::1] used):
    cdef Py_ssize_t i, j, t, best
    cdef double total = 0.0, bk, wij
    for i in range(m):
        key[i] = INFINITY
        parent[i] = -1
        used[i] = 0
    key[0] = 0.0
    for t in range(m):
        best = -1
        bk = INFINITY
        for i in range(m):
            if not used[i] and (best < 0 or key[i] < bk):
                best = i
                bk = key[i]
        used[best] = 1
        total += bk
        for j in range(m):
            if not used[j]:
                wij = w[idx[best], idx[j]]
                if wij < key[j]:
                    key[j] = wij
                    parent[j] = best
    return total


def prim_mst(double[:, ::1] w):
    cdef Py_ssize_t m = w.shape[0]
    idx = np.arange(m, dtype=np.int64)
    parent = np.empty(m, dtype=np.int64)
    key = np.empty(m, dtype=np.float64)
    used = np.empty(m, dtype=np.int8)
    total = _prim(w, idx, m, parent, key, used)
    return parent, total


def kmst_exact(double[:, ::1] w, int k):
    """Minimum MST weight over vertex subsets of size k containing vertex 0."""
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t i, cnt
    cdef long long mask, best_mask = 1, c, r, full
    cdef double best = INFINITY, total
    idx = np.empty(m, dtype=np.int64)
    parent = np.empty(m, dtype=np.int64)
    key = np.empty(m, dtype=np.float64)
    used = np.empty(m, dtype=np.int8)
    cdef long long[::1] idx_v = idx
    if k == 1:
        return 0.0, 1
    # Gosper's hack over (k-1)-subsets of bits 1..m-1
    full = 1LL << (m - 1)
    mask = (1LL << (k - 1)) - 1
    while mask < full:
        idx_v[0] = 0
        cnt = 1
        for i in range(m - 1):
            if (mask >> i) & 1:
                idx_v[cnt] = i + 1
                cnt += 1
        total = _prim(w, idx_v, k, parent, key, used)
        if total < best or (total == best and ((mask << 1) | 1) < best_mask):
            best = total
            best_mask = (mask << 1) | 1
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r
    return best, best_mask


def dreyfus_wagner(double[:, ::1] dist, double[:, ::1] base):
    """Group Steiner DP: dp[mask, v] = cheapest tree joining groups in mask and v."""
    cdef Py_ssize_t g = base.shape[0]
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t full = 1 << g
    cdef Py_ssize_t mask, sub, low, u, v, i
    cdef double cand, best
    dp_arr = np.full((full, n), INFINITY, dtype=np.float64)
    split_arr = np.full((full, n), -1, dtype=np.int64)
    via_arr = np.full((full, n), -1, dtype=np.int64)
    tmp_arr = np.empty(n, dtype=np.float64)
    tsplit_arr = np.empty(n, dtype=np.int64)
    cdef double[:, ::1] dp = dp_arr
    cdef long long[:, ::1] split = split_arr
    cdef long long[:, ::1] via = via_arr
    cdef double[::1] tmp = tmp_arr
    cdef long long[::1] tsplit = tsplit_arr
    for i in range(g):
        for v in range(n):
            dp[1 << i, v] = base[i, v]
    for mask in range(1, full):
        if (mask & (mask - 1)) == 0:
            continue
        low = mask & -mask
        for u in range(n):
            tmp[u] = INFINITY
            tsplit[u] = -1
        sub = (mask - 1) & mask
        while sub > 0:
            if sub & low:
                for u in range(n):
                    cand = dp[sub, u] + dp[mask ^ sub, u]
                    if cand < tmp[u]:
                        tmp[u] = cand
                        tsplit[u] = sub
            sub = (sub - 1) & mask
        for v in range(n):
            best = INFINITY
            for u in range(n):
                cand = tmp[u] + dist[u, v]
                if cand < best:
                    best = cand
                    via[mask, v] = u
            dp[mask, v] = best
            if via[mask, v] >= 0:
                split[mask, v] = tsplit[via[mask, v]]
    return dp_arr, split_arr, via_arr
