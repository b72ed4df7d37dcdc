"""Reduction of star g2g instances to generalized set-connectivity and back.

For each source ``s_i`` the demanded terminals are sorted by broadcast cost
``t^i_1..t^i_r``. Copy ``j`` holds ``s_i(j), t^i_1(j)..t^i_j(j)`` joined by
the funnel metric closure, and a hub ``s_i(0)`` links to ``s_i(j)`` at cost
``c(s_i, t^i_j)``. Demand ``x`` asks to connect the hubs to any copy of a
terminal of group ``x``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from anycast import kernels
from anycast.errors import InvalidInputError, UnsupportedSizeError
from anycast.model import TOL, Instance, Solution, norm_edge, realize_tree
from anycast.trees import MAX_STEINER_TERMINALS, SteinerTable

MAX_COMPONENT_NODES = 400


@dataclass(frozen=True)
class DerivedNode:
    """``kind`` is ``hub`` (s_i(0)), ``source`` (s_i(j)) or ``terminal`` (t^i_a(j))."""

    kind: str
    source_index: int
    copy: int
    original: int
    rank: int = 0


@dataclass
class SetConnectivityInstance:
    weights: dict[tuple[int, int], float]
    demands: list[tuple[frozenset[int], frozenset[int]]]
    back_map: list[DerivedNode]
    super_sources: frozenset[int]
    sources: list[int]
    order: list[list[int]]
    broadcast: list[list[float]]
    components: list[list[int]] = field(default_factory=list)
    group_ids: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.back_map)

    def weight(self, edges) -> float:
        return float(sum(self.weights[norm_edge(u, v)] for u, v in edges))

    def to_json(self) -> str:
        return json.dumps(
            {
                "nodes": [
                    {"id": i, "kind": b.kind, "source_index": b.source_index, "copy": b.copy, "original": b.original}
                    for i, b in enumerate(self.back_map)
                ],
                "edges": [[u, v, w] for (u, v), w in sorted(self.weights.items())],
                "super_sources": sorted(self.super_sources),
                "demands": [
                    {"group": g, "SS": sorted(a), "TT": sorted(b)} for g, (a, b) in zip(self.group_ids, self.demands)
                ],
            },
            indent=1,
        )


def build_set_connectivity(sub: Instance) -> SetConnectivityInstance:
    sources = sub.sources
    groups = sub.demanded_groups()
    terms = sub.demanded_terminals()
    dist = sub.metric.dist
    back: list[DerivedNode] = []
    weights: dict[tuple[int, int], float] = {}
    tt: dict[int, set[int]] = {j: set() for j in groups}
    hubs = []
    orders, costs, comps = [], [], []

    def add(node: DerivedNode) -> int:
        back.append(node)
        return len(back) - 1

    for i, s in enumerate(sources):
        # stable: equal broadcast costs keep terminal-id order
        order = sorted(terms, key=lambda t: (sub.c[s, t], t))
        cij = [float(sub.c[s, t]) for t in order]
        orders.append(order)
        costs.append(cij)
        first = len(back)
        hub = add(DerivedNode("hub", i, 0, s))
        hubs.append(hub)
        for j in range(1, len(order) + 1):
            root = add(DerivedNode("source", i, j, s))
            weights[(hub, root)] = cij[j - 1]
            members = [(root, s)]
            for a in range(1, j + 1):
                t = order[a - 1]
                node = add(DerivedNode("terminal", i, j, t, a))
                members.append((node, t))
                for x in groups:
                    if t in sub.dest_groups[x]:
                        tt[x].add(node)
            for p in range(len(members)):
                for q in range(p + 1, len(members)):
                    (u, ou), (v, ov) = members[p], members[q]
                    weights[(u, v)] = float(dist[ou, ov])
        comps.append(list(range(first, len(back))))
    ss = frozenset(hubs)
    demands = [(ss, frozenset(tt[x])) for x in groups]
    return SetConnectivityInstance(weights, demands, back, ss, sources, orders, costs, comps, groups)


def _component_closure(sc: SetConnectivityInstance, nodes: list[int]):
    pos = {v: i for i, v in enumerate(nodes)}
    w = np.full((len(nodes), len(nodes)), np.inf)
    np.fill_diagonal(w, 0.0)
    for (u, v), x in sc.weights.items():
        if u in pos and v in pos:
            w[pos[u], pos[v]] = w[pos[v], pos[u]] = x
    dist, nxt = kernels.floyd_warshall(w)
    return pos, dist, nxt


def solve_set_connectivity_exact(sc: SetConnectivityInstance) -> tuple[list[tuple[int, int]], float]:
    """Optimal edge set for a derived instance.

    Components only meet through the demands, so every tree of an optimal
    answer sits inside one component and contains its hub. Per component a
    group-Steiner table prices each subset of demands rooted at the hub; a
    subset DP then splits the demands among components.
    """
    q = len(sc.demands)
    if q > MAX_STEINER_TERMINALS:
        raise UnsupportedSizeError(f"exact set-connectivity handles at most {MAX_STEINER_TERMINALS} demands")
    if any(len(c) > MAX_COMPONENT_NODES for c in sc.components):
        raise UnsupportedSizeError(f"exact set-connectivity handles components of at most {MAX_COMPONENT_NODES} nodes")
    full = (1 << q) - 1
    tables = []
    for comp in sc.components:
        pos, dist, nxt = _component_closure(sc, comp)
        hub = next(x for x in comp if x in sc.super_sources)
        # demands without a copy in this component cannot be served here
        here = [b for b, (_, targets) in enumerate(sc.demands) if any(x in pos for x in targets)]
        table = SteinerTable(dist, [[pos[x] for x in sc.demands[b][1] if x in pos] for b in here])
        costs = np.full(full + 1, np.inf)
        for local in range(1 << len(here)):
            m = sum(1 << b for k, b in enumerate(here) if local >> k & 1)
            costs[m] = table.cost(local, pos[hub])
        tables.append((comp, pos, nxt, hub, table, here, costs))

    F = np.full(full + 1, np.inf)
    F[0] = 0.0
    picks = []
    for *_, costs in tables:
        G = np.full(full + 1, np.inf)
        pick = np.zeros((full + 1, 2), dtype=np.int64)
        for a in np.flatnonzero(np.isfinite(F)):
            rest = full & ~int(a)
            b = rest
            # only masks disjoint from a need checking; overlaps are dominated
            while True:
                val = F[a] + costs[b]
                if val < G[a | b]:
                    G[a | b] = val
                    pick[a | b] = (a, b)
                if b == 0:
                    break
                b = (b - 1) & rest
        picks.append(pick)
        F = G
    if not np.isfinite(F[full]):
        raise InvalidInputError("set-connectivity instance is infeasible")

    edges: list[tuple[int, int]] = []
    m = full
    for idx in range(len(tables) - 1, -1, -1):
        a, b = (int(x) for x in picks[idx][m])
        comp, pos, nxt, hub, table, here, _ = tables[idx]
        if b:
            local = sum(1 << k for k, g in enumerate(here) if b >> g & 1)
            for u, v in table.edges(local, pos[hub]):
                while u != v:
                    w = int(nxt[u, v])
                    edges.append(norm_edge(comp[u], comp[w]))
                    u = w
        m = a
    edges = sorted(set(edges))
    return edges, sc.weight(edges)


def lift_solution(sc: SetConnectivityInstance, edges, instance: Instance) -> Solution:
    """Map a feasible derived edge set back to a g2g solution of no larger cost."""
    edges = [norm_edge(u, v) for u, v in edges]
    for e in edges:
        if e not in sc.weights:
            raise InvalidInputError(f"edge {e} is not in the derived graph")
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    sol = Solution()
    reached_by: dict[int, int] = {}
    for i, s in enumerate(sc.sources):
        hub = next(x for x in sc.components[i] if x in sc.super_sources)
        seen = {hub}
        stack = [hub]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        copies = [sc.back_map[y].copy for y in adj.get(hub, ())]
        if not copies:
            continue
        top = max(copies)
        for x in seen:
            reached_by.setdefault(x, i)
        closure = []
        for u, v in edges:
            if u in seen and u != hub and v != hub:
                closure.append((sc.back_map[u].original, sc.back_map[v].original))
        closure = [(u, v) for u, v in closure if u != v]
        sol.funnel_trees[s] = realize_tree(instance, s, closure)
        sol.balls[s] = sc.broadcast[i][top - 1]
    for k, (_, j) in enumerate(instance.demands):
        x = sc.group_ids.index(j)
        hits = sorted(
            (sc.back_map[y].rank, y) for y in sc.demands[x][1] if y in reached_by
        )
        if not hits:
            raise InvalidInputError(f"demand {k} is not connected to a super source")
        y = hits[0][1]
        sol.assignment[k] = (sc.sources[reached_by[y]], sc.back_map[y].original)
    return sol


def is_feasible(sc: SetConnectivityInstance, edges) -> bool:
    """Every demand has a path from some super source to some of its terminals."""
    parent = list(range(sc.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return all({find(x) for x in ss} & {find(x) for x in tt} for ss, tt in sc.demands)


def embed_solution(sc: SetConnectivityInstance, balls: dict[int, float], closure_trees: dict[int, list]) -> list[tuple[int, int]]:
    """Derived edge set for a g2g solution whose trees stay inside the balls.

    Source ``s`` with ball ``b`` uses the largest copy ``p`` with
    ``c_{ip} <= b``; its closure tree is copied there and joined to the hub.
    """
    where = {(b.source_index, b.copy, b.kind, b.original): x for x, b in enumerate(sc.back_map)}
    edges = []
    for i, s in enumerate(sc.sources):
        if s not in closure_trees:
            continue
        p = int(np.searchsorted(np.asarray(sc.broadcast[i]), balls[s] + TOL, side="right"))
        if p == 0:
            raise InvalidInputError(f"ball of source {s} reaches no demanded terminal")
        hub = where[(i, 0, "hub", s)]
        root = where[(i, p, "source", s)]
        edges.append(norm_edge(hub, root))
        if (i, p, "terminal", s) in where:
            edges.append(norm_edge(root, where[(i, p, "terminal", s)]))

        def node(x):
            if x == s:
                return root
            try:
                return where[(i, p, "terminal", x)]
            except KeyError:
                raise InvalidInputError(f"tree of source {s} leaves its ball at node {x}") from None

        edges.extend(norm_edge(node(u), node(v)) for u, v in closure_trees[s])
    return sorted(set(edges))
