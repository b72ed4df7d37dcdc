"""Instances, solutions, cost evaluation and feasibility checks.

Nodes are the integers ``0..n-1``; weights live in dense ``n x n`` arrays.
``c[u, v]`` is the broadcast cost for ``u`` to reach ``v`` and ``d`` is the
symmetric funnel-edge cost. ``d`` is kept exactly as given; solvers that
route through relays use :attr:`Instance.metric` (its shortest-path closure)
and turn closure edges back into real edges with :func:`realize_tree`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from anycast import kernels
from anycast.errors import InvalidInputError, InvalidSolutionError

TOL = 1e-9

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class EuclideanLayout:
    coords: np.ndarray
    kappa: float = 2.0

    def __post_init__(self):
        pts = np.asarray(self.coords, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidInputError("coords must be an (n, 2) array")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError("coordinates must be finite")
        if not self.kappa >= 2:
            raise InvalidInputError(f"path-loss exponent must be >= 2, got {self.kappa}")
        object.__setattr__(self, "coords", pts)


@dataclass(frozen=True)
class Metric:
    """Shortest-path closure of a weight matrix plus next-hop table."""

    dist: np.ndarray
    next_hop: np.ndarray

    def path(self, u: int, v: int) -> list[int]:
        nodes = [u]
        while u != v:
            u = int(self.next_hop[u, v])
            nodes.append(u)
        return nodes


def metric_completion(raw_d) -> np.ndarray:
    """All-pairs shortest-path closure of a symmetric nonnegative matrix."""
    return _closure(raw_d).dist


def _closure(raw_d) -> Metric:
    d = np.asarray(raw_d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidInputError("funnel costs must be a square matrix")
    if np.isnan(d).any() or (d < 0).any():
        raise InvalidInputError("funnel costs must be nonnegative")
    dist, nxt = kernels.floyd_warshall(d)
    return Metric(dist, nxt)


def euclidean_weights(layout: EuclideanLayout) -> tuple[np.ndarray, np.ndarray]:
    pts = layout.coords
    diff = pts[:, None, :] - pts[None, :, :]
    sq = (diff**2).sum(axis=-1)
    # skip the sqrt round trip for the common kappa=2 so integer layouts stay exact
    w = sq if layout.kappa == 2 else np.sqrt(sq) ** layout.kappa
    return w, w.copy()


@dataclass(frozen=True, eq=False)
class Instance:
    c: np.ndarray
    d: np.ndarray
    source_groups: tuple[frozenset[int], ...]
    dest_groups: tuple[frozenset[int], ...]
    demands: tuple[tuple[int, int], ...]
    coords: np.ndarray | None = None
    kappa: float | None = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        d = np.asarray(self.d, dtype=np.float64)
        n = c.shape[0]
        if c.shape != (n, n) or d.shape != (n, n):
            raise InvalidInputError("c and d must both be n x n")
        if (c < 0).any() or (d < 0).any() or np.isnan(c).any() or np.isnan(d).any():
            raise InvalidInputError("weights must be nonnegative")
        if np.any(np.diag(c) != 0) or np.any(np.diag(d) != 0):
            raise InvalidInputError("self costs must be zero")
        if not np.array_equal(d, d.T):
            raise InvalidInputError("funnel costs must be symmetric")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        sg = tuple(frozenset(int(x) for x in g) for g in self.source_groups)
        dg = tuple(frozenset(int(x) for x in g) for g in self.dest_groups)
        for g in sg + dg:
            if not g:
                raise InvalidInputError("groups must be nonempty")
            if min(g) < 0 or max(g) >= n:
                raise InvalidInputError("group refers to an unknown node")
        dem = tuple((int(i), int(j)) for i, j in self.demands)
        for i, j in dem:
            if not (0 <= i < len(sg) and 0 <= j < len(dg)):
                raise InvalidInputError(f"demand {(i, j)} out of range")
        object.__setattr__(self, "source_groups", sg)
        object.__setattr__(self, "dest_groups", dg)
        object.__setattr__(self, "demands", dem)
        if self.coords is not None:
            object.__setattr__(self, "coords", np.asarray(self.coords, dtype=np.float64))

    @classmethod
    def from_layout(cls, layout: EuclideanLayout, source_groups, dest_groups, demands) -> Instance:
        c, d = euclidean_weights(layout)
        return cls(c, d, source_groups, dest_groups, demands, coords=layout.coords, kappa=layout.kappa)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def nodes(self) -> range:
        return range(self.n)

    @cached_property
    def metric(self) -> Metric:
        return _closure(self.d)

    @property
    def is_euclidean(self) -> bool:
        if self.coords is None or self.kappa is None:
            return False
        c, d = euclidean_weights(EuclideanLayout(self.coords, self.kappa))
        return np.allclose(self.c, c, rtol=1e-12, atol=TOL) and np.allclose(self.d, d, rtol=1e-12, atol=TOL)

    # single-source-group views -------------------------------------------------

    @property
    def sources(self) -> list[int]:
        """Sorted nodes of the only source group of a star subinstance."""
        if len(self.source_groups) != 1:
            raise InvalidInputError("expected exactly one source group")
        return sorted(self.source_groups[0])

    def demanded_groups(self) -> list[int]:
        """Destination-group indices with a demand, in demand order, deduplicated."""
        seen = {}
        for _, j in self.demands:
            seen.setdefault(j, None)
        return list(seen)

    def demanded_terminals(self) -> list[int]:
        out = set()
        for j in self.demanded_groups():
            out |= self.dest_groups[j]
        return sorted(out)


@dataclass
class Solution:
    """Balls, funnel trees and per-demand witnesses, keyed by source node.

    A source is active iff it has an entry in ``funnel_trees`` (possibly with
    no edges, when the source itself is the witness terminal).
    """

    balls: dict[int, float] = field(default_factory=dict)
    funnel_trees: dict[int, list[Edge]] = field(default_factory=dict)
    assignment: dict[int, tuple[int, int]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def tree_nodes(self, s: int) -> set[int]:
        nodes = {s}
        for u, v in self.funnel_trees.get(s, ()):
            nodes.add(u)
            nodes.add(v)
        return nodes


@dataclass(frozen=True)
class CostBreakdown:
    ball_cost: float
    funnel_cost: float

    @property
    def total(self) -> float:
        return self.ball_cost + self.funnel_cost


@dataclass
class FeasibilityReport:
    ok: bool
    violations: list[tuple[int, str]]
    tree_errors: list[tuple[int, str]] = field(default_factory=list)

    def describe(self) -> list[str]:
        lines = [f"demand {k}: {why}" for k, why in self.violations]
        lines += [f"tree of source {s}: {why}" for s, why in self.tree_errors]
        return lines


def evaluate_cost(instance: Instance, solution: Solution) -> CostBreakdown:
    n = instance.n
    ball = 0.0
    funnel = 0.0
    for s, edges in solution.funnel_trees.items():
        if not 0 <= s < n:
            raise InvalidSolutionError(f"unknown source node {s}")
        ball += solution.balls.get(s, 0.0)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidSolutionError(f"edge ({u}, {v}) between unknown nodes")
            funnel += instance.d[u, v]
    return CostBreakdown(float(ball), float(funnel))


def tree_problem(root: int, edges: Sequence[Edge]) -> str | None:
    """Return why ``edges`` is not a tree containing ``root``, or None."""
    parent: dict[int, int] = {root: root}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u == v:
            return f"self loop at {u}"
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return f"cycle through edge ({u}, {v})"
        parent[ru] = rv
    r = find(root)
    if any(find(x) != r for x in parent):
        return "disconnected"
    return None


def validate_solution(instance: Instance, solution: Solution) -> FeasibilityReport:
    violations: list[tuple[int, str]] = []
    tree_errors: list[tuple[int, str]] = []
    nodes_of = {}
    for s, edges in solution.funnel_trees.items():
        why = tree_problem(s, edges)
        if why is not None:
            tree_errors.append((s, why))
        nodes_of[s] = solution.tree_nodes(s)
    for k, (i, j) in enumerate(instance.demands):
        group = instance.dest_groups[j]
        covered = False
        reachable = False
        for s in sorted(instance.source_groups[i]):
            if s not in nodes_of:
                continue
            cap = solution.balls.get(s, 0.0) + TOL
            for t in group:
                if instance.c[s, t] <= cap:
                    covered = True
                    if t in nodes_of[s]:
                        reachable = True
                        break
            if reachable:
                break
        if not covered:
            violations.append((k, "no ball covers a terminal of the destination group"))
        elif not reachable:
            violations.append((k, "covered terminal is not in the funnel tree"))
    return FeasibilityReport(not violations and not tree_errors, violations, tree_errors)


# decomposition ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subproblem:
    """A star subinstance plus the original demand index of each of its demands."""

    instance: Instance
    group_index: int
    demand_ids: tuple[int, ...]


def decompose_demands(instance: Instance) -> list[Subproblem]:
    out = []
    for i, group in enumerate(instance.source_groups):
        ids = [k for k, (a, _) in enumerate(instance.demands) if a == i]
        if not ids:
            continue
        dest = []
        index = {}
        demands = []
        for k in ids:
            j = instance.demands[k][1]
            if j not in index:
                index[j] = len(dest)
                dest.append(instance.dest_groups[j])
            demands.append((0, index[j]))
        sub = Instance(
            instance.c,
            instance.d,
            (group,),
            tuple(dest),
            tuple(demands),
            coords=instance.coords,
            kappa=instance.kappa,
        )
        out.append(Subproblem(sub, i, tuple(ids)))
    return out


def spanning_tree(root: int, edges: Iterable[Edge], weights: np.ndarray) -> list[Edge]:
    """Minimum spanning tree of the component of ``root`` in the edge-induced subgraph."""
    uniq = sorted({norm_edge(u, v) for u, v in edges if u != v}, key=lambda e: (weights[e], e))
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for u, v in uniq:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
    r = find(root)
    return sorted(e for e in chosen if find(e[0]) == r)


def realize_tree(instance: Instance, root: int, closure_edges: Iterable[Edge]) -> list[Edge]:
    """Expand closure edges into shortest raw-``d`` paths and reduce to a tree.

    The result spans every endpoint of ``closure_edges`` and weighs no more
    than their closure cost.
    """
    metric = instance.metric
    raw = []
    for u, v in closure_edges:
        path = metric.path(u, v)
        raw.extend(norm_edge(a, b) for a, b in zip(path, path[1:]))
    return spanning_tree(root, raw, instance.d)


def combine_solutions(instance: Instance, parts: Sequence[tuple[Subproblem, Solution]]) -> Solution:
    """Stitch per-source-group solutions into one for the original instance.

    Solutions of groups that share a source node are merged (larger ball,
    spanning tree of the union), which never costs more than the sum.
    """
    out = Solution()
    for sub, sol in parts:
        for s, edges in sol.funnel_trees.items():
            if s in out.funnel_trees:
                out.balls[s] = max(out.balls[s], sol.balls.get(s, 0.0))
                out.funnel_trees[s] = spanning_tree(s, list(out.funnel_trees[s]) + list(edges), instance.d)
            else:
                out.balls[s] = sol.balls.get(s, 0.0)
                out.funnel_trees[s] = list(edges)
        for k, witness in sol.assignment.items():
            out.assignment[sub.demand_ids[k]] = witness
        for key, value in sol.meta.items():
            out.meta.setdefault(key, []).append(value)
    return out


def harmonic(n: int) -> float:
    return math.fsum(1.0 / i for i in range(1, n + 1))


def witness_ball(instance: Instance, s: int, terminals: Iterable[int]) -> float:
    ts = list(terminals)
    return float(max(instance.c[s, t] for t in ts)) if ts else 0.0
