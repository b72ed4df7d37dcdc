"""Numpy fallback for the compiled kernels.

Every routine here mirrors ``_kernels.pyx`` operation for operation (same
loop order, same strict comparisons) so both backends return identical
arrays, not merely equal-cost answers.
"""
from itertools import combinations

import numpy as np


def floyd_warshall(w):
    dist = np.array(w, dtype=np.float64, copy=True)
    n = dist.shape[0]
    nxt = np.tile(np.arange(n, dtype=np.int64), (n, 1))
    for k in range(n):
        cand = dist[:, k : k + 1] + dist[k : k + 1, :]
        better = cand < dist
        if better.any():
            dist = np.where(better, cand, dist)
            nxt = np.where(better, nxt[:, k : k + 1], nxt)
    return dist, nxt


def _prim(w, idx):
    m = len(idx)
    sub = w[np.ix_(idx, idx)]
    key = np.full(m, np.inf)
    parent = np.full(m, -1, dtype=np.int64)
    used = np.zeros(m, dtype=bool)
    key[0] = 0.0
    total = 0.0
    for _ in range(m):
        masked = np.where(used, np.inf, key)
        best = int(np.argmin(masked))
        if used[best]:
            # every remaining key is inf; mimic the compiled scan order
            best = int(np.flatnonzero(~used)[0])
        used[best] = True
        total += key[best]
        row = sub[best]
        upd = (~used) & (row < key)
        key[upd] = row[upd]
        parent[upd] = best
    return parent, float(total)


def prim_mst(w):
    w = np.asarray(w, dtype=np.float64)
    return _prim(w, np.arange(w.shape[0]))


def kmst_exact(w, k):
    w = np.asarray(w, dtype=np.float64)
    m = w.shape[0]
    if k == 1:
        return 0.0, 1
    best, best_mask = np.inf, 1
    for combo in combinations(range(1, m), k - 1):
        idx = np.array((0,) + combo)
        _, total = _prim(w, idx)
        mask = 1
        for i in combo:
            mask |= 1 << i
        if total < best or (total == best and mask < best_mask):
            best, best_mask = total, mask
    return best, best_mask


def dreyfus_wagner(dist, base):
    dist = np.asarray(dist, dtype=np.float64)
    base = np.asarray(base, dtype=np.float64)
    g, n = base.shape
    full = 1 << g
    dp = np.full((full, n), np.inf)
    split = np.full((full, n), -1, dtype=np.int64)
    via = np.full((full, n), -1, dtype=np.int64)
    for i in range(g):
        dp[1 << i] = base[i]
    for mask in range(1, full):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        tmp = np.full(n, np.inf)
        tsplit = np.full(n, -1, dtype=np.int64)
        sub = (mask - 1) & mask
        while sub > 0:
            if sub & low:
                cand = dp[sub] + dp[mask ^ sub]
                better = cand < tmp
                tmp[better] = cand[better]
                tsplit[better] = sub
            sub = (sub - 1) & mask
        total = tmp[:, None] + dist
        u = np.argmin(total, axis=0)
        best = total[u, np.arange(n)]
        ok = best < np.inf
        dp[mask] = best
        via[mask, ok] = u[ok]
        split[mask, ok] = tsplit[u[ok]]
    return dp, split, via
