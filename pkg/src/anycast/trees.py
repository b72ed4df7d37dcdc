"""Tree primitives shared by the solvers: MST, exact Steiner tree, rooted k-MST."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from anycast import kernels
from anycast.errors import InvalidInputError, UnsupportedSizeError
from anycast.model import Edge, norm_edge, spanning_tree

MAX_STEINER_TERMINALS = 12
MAX_EXACT_KMST_NODES = 20


@dataclass(frozen=True)
class Tree:
    root: int
    edges: tuple[Edge, ...]
    weight: float
    approximate: bool = False

    @property
    def nodes(self) -> set[int]:
        out = {self.root}
        for u, v in self.edges:
            out.add(u)
            out.add(v)
        return out


def edge_weight(edges: Iterable[Edge], metric: np.ndarray) -> float:
    return float(sum(metric[u, v] for u, v in edges))


def _prim_edges(idx: Sequence[int], metric: np.ndarray) -> tuple[list[Edge], float]:
    idx = np.asarray(idx, dtype=np.int64)
    parent, total = kernels.prim_mst(metric[np.ix_(idx, idx)])
    edges = [norm_edge(int(idx[i]), int(idx[p])) for i, p in enumerate(parent) if p >= 0]
    return sorted(edges), float(total)


def mst(nodes: Iterable[int], metric: np.ndarray, root: int | None = None) -> Tree:
    """Minimum spanning tree of ``nodes`` under ``metric``.

    Prim's algorithm from the smallest node id; key ties go to the lowest
    index, so the edge set is reproducible.
    """
    order = sorted(set(int(x) for x in nodes))
    if not order:
        raise InvalidInputError("mst of an empty node set")
    if root is None:
        root = order[0]
    elif root not in order:
        raise InvalidInputError("root must be one of the nodes")
    edges, total = _prim_edges(order, metric)
    return Tree(root, tuple(edges), total)


class SteinerTable:
    """Dreyfus-Wagner table over groups of terminals.

    ``cost(mask, v)`` is the weight of the cheapest tree touching every group
    in ``mask`` plus node ``v``; a group is satisfied by any one of its
    members, so singleton groups give the classic Steiner DP.
    """

    def __init__(self, dist: np.ndarray, groups: Sequence[Sequence[int]]):
        if len(groups) > MAX_STEINER_TERMINALS:
            raise UnsupportedSizeError(
                f"exact Steiner DP supports at most {MAX_STEINER_TERMINALS} terminal groups, got {len(groups)}"
            )
        self.dist = dist
        self.groups = [sorted(g) for g in groups]
        n = dist.shape[0]
        base = np.empty((len(groups), n))
        self._member = np.empty((len(groups), n), dtype=np.int64)
        for i, g in enumerate(self.groups):
            sub = dist[g]
            pick = np.argmin(sub, axis=0)
            self._member[i] = np.asarray(g)[pick]
            base[i] = sub[pick, np.arange(n)]
        if groups:
            self.dp, self.split, self.via = kernels.dreyfus_wagner(dist, base)
        else:
            self.dp = np.zeros((1, n))
        self.full = (1 << len(groups)) - 1

    def cost(self, mask: int, v: int) -> float:
        return float(self.dp[mask, v]) if mask else 0.0

    def edges(self, mask: int, v: int) -> list[Edge]:
        out: list[Edge] = []
        stack = [(mask, v)]
        while stack:
            m, x = stack.pop()
            if m == 0:
                continue
            if m & (m - 1) == 0:
                i = m.bit_length() - 1
                u = int(self._member[i, x])
                if u != x:
                    out.append(norm_edge(u, x))
                continue
            u = int(self.via[m, x])
            sub = int(self.split[m, x])
            if u != x:
                out.append(norm_edge(u, x))
            stack.append((sub, u))
            stack.append((m ^ sub, u))
        return out


def _sub_closure(metric: np.ndarray, cand: list[int]):
    dist, nxt = kernels.floyd_warshall(metric[np.ix_(cand, cand)])
    return dist, nxt


def _expand(edges: Iterable[Edge], nxt: np.ndarray, cand: list[int]) -> list[Edge]:
    raw = []
    for u, v in edges:
        while u != v:
            w = int(nxt[u, v])
            raw.append(norm_edge(cand[u], cand[w]))
            u = w
    return raw


def exact_steiner_tree(metric: np.ndarray, terminals: Iterable[int], candidates: Iterable[int]) -> Tree:
    """Minimum tree inside ``candidates`` joining all ``terminals``."""
    terms = sorted(set(int(t) for t in terminals))
    cand = sorted(set(int(x) for x in candidates) | set(terms))
    if not terms:
        raise InvalidInputError("no terminals")
    if len(terms) - 1 > MAX_STEINER_TERMINALS:
        raise UnsupportedSizeError(f"at most {MAX_STEINER_TERMINALS + 1} terminals supported, got {len(terms)}")
    pos = {x: i for i, x in enumerate(cand)}
    dist, nxt = _sub_closure(metric, cand)
    root = pos[terms[0]]
    table = SteinerTable(dist, [[pos[t]] for t in terms[1:]])
    closure_edges = table.edges(table.full, root)
    raw = _expand(closure_edges, nxt, cand)
    edges = spanning_tree(terms[0], raw, metric)
    return Tree(terms[0], tuple(edges), edge_weight(edges, metric))


def k_mst(root: int, nodes: Iterable[int], metric: np.ndarray, k: int, mode: str = "auto") -> Tree:
    """Cheapest tree containing ``root`` and spanning at least ``k`` of ``nodes``.

    ``mode="exact"`` enumerates vertex subsets (at most 20 nodes);
    ``"heuristic"`` grows greedily from the root by nearest attachment;
    ``"auto"`` picks exact whenever the size allows it.
    """
    others = sorted(set(int(x) for x in nodes) - {root})
    m = len(others) + 1
    if not 1 <= k <= m:
        raise InvalidInputError(f"k={k} out of range for {m} nodes")
    if mode == "auto":
        mode = "exact" if m <= MAX_EXACT_KMST_NODES else "heuristic"
    if mode == "exact":
        if m > MAX_EXACT_KMST_NODES:
            raise UnsupportedSizeError(f"exact k-MST supports at most {MAX_EXACT_KMST_NODES} nodes")
        idx = [root] + others
        sub = metric[np.ix_(idx, idx)]
        _, mask = kernels.kmst_exact(sub, k)
        chosen = [idx[i] for i in range(m) if (int(mask) >> i) & 1]
        edges, total = _prim_edges([root] + sorted(chosen[1:]), metric)
        return Tree(root, tuple(edges), total)
    if mode != "heuristic":
        raise InvalidInputError(f"unknown k-MST mode {mode!r}")
    return _greedy_kmst(root, others, metric, k)


def _greedy_kmst(root: int, others: list[int], metric: np.ndarray, k: int) -> Tree:
    idx = np.asarray([root] + others)
    sub = metric[np.ix_(idx, idx)]
    m = len(idx)
    used = np.zeros(m, dtype=bool)
    used[0] = True
    key = sub[0].copy()
    parent = np.zeros(m, dtype=np.int64)
    edges = []
    total = 0.0
    for _ in range(k - 1):
        masked = np.where(used, np.inf, key)
        j = int(np.argmin(masked))
        used[j] = True
        total += float(key[j])
        edges.append(norm_edge(int(idx[parent[j]]), int(idx[j])))
        better = (~used) & (sub[j] < key)
        key[better] = sub[j][better]
        parent[better] = j
    return Tree(root, tuple(sorted(edges)), total, approximate=True)
