"""The four comparison heuristics: Smallest Edge, T-Centric, T-Adaptive, Smallest Increment.

Each one only decides the funnel trees; the ball of a source is then the
smallest one enclosing its witness terminals.
"""
from __future__ import annotations

import numpy as np

from anycast.model import Instance, Solution, norm_edge
from anycast.trees import mst


def _group_members(sub: Instance) -> dict[int, list[int]]:
    return {j: sorted(sub.dest_groups[j]) for j in sub.demanded_groups()}


def _finish(sub: Instance, trees: dict[int, list], witness: dict[int, tuple[int, int]]) -> Solution:
    sol = Solution()
    for s, edges in trees.items():
        mine = [t for (src, t) in witness.values() if src == s]
        if not mine:
            continue
        sol.funnel_trees[s] = sorted(norm_edge(u, v) for u, v in edges)
        sol.balls[s] = float(max(sub.c[s, t] for t in mine))
    for k, (_, j) in enumerate(sub.demands):
        sol.assignment[k] = witness[j]
    return sol


def t_centric(sub: Instance) -> Solution:
    """Assign each group's closest (source, terminal) pair, then MST per source."""
    sources = np.array(sub.sources)
    assigned: dict[int, set[int]] = {}
    witness = {}
    for j, members in _group_members(sub).items():
        block = sub.d[np.ix_(sources, members)]
        # argmin over the flattened block picks the lowest source, then lowest terminal
        a, b = np.unravel_index(int(np.argmin(block)), block.shape)
        s, t = int(sources[a]), members[b]
        assigned.setdefault(s, set()).add(t)
        witness[j] = (s, t)
    trees = {s: list(mst({s, *ts}, sub.d, root=s).edges) for s, ts in assigned.items()}
    return _finish(sub, trees, witness)


def _terminal_groups(groups: dict[int, list[int]]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for j, members in groups.items():
        for t in members:
            out.setdefault(t, []).append(j)
    return out


def t_adaptive(sub: Instance) -> Solution:
    """Prim-like growth: attach the closest open-group terminal to any source cluster."""
    sources = sub.sources
    groups = _group_members(sub)
    tgroups = _terminal_groups(groups)
    n = sub.n
    owner = np.full(n, -1)
    best = np.full(n, np.inf)
    via = np.full(n, -1)
    vsrc = np.full(n, -1)
    cand = np.zeros(n, dtype=bool)
    cand[list(tgroups)] = True
    open_groups = set(groups)
    witness = {}
    trees = {s: [] for s in sources}

    def absorb(node, s):
        owner[node] = s
        row = sub.d[node]
        # strict improvement keeps the earlier (lower source) cluster on ties
        better = cand & (row < best)
        best[better] = row[better]
        via[better] = node
        vsrc[better] = s

    for s in sources:
        absorb(s, s)
    # sources that are themselves open-group terminals cover those groups at no cost
    for s in sources:
        for j in tgroups.get(s, ()):
            if j in open_groups:
                open_groups.discard(j)
                witness[j] = (s, s)
    _close(cand, tgroups, groups, open_groups)
    while open_groups:
        masked = np.where(cand & (owner < 0), best, np.inf)
        key = np.lexsort((np.arange(n), vsrc, masked))
        t = int(key[0])
        s, r = int(vsrc[t]), int(via[t])
        trees[s].append((r, t))
        for j in tgroups[t]:
            if j in open_groups:
                open_groups.discard(j)
                witness[j] = (s, t)
        absorb(t, s)
        _close(cand, tgroups, groups, open_groups)
    return _finish(sub, trees, witness)


def _close(cand, tgroups, groups, open_groups):
    """Drop terminals whose every group is already satisfied."""
    for t in np.flatnonzero(cand):
        if not any(j in open_groups for j in tgroups[int(t)]):
            cand[t] = False


def smallest_increment(sub: Instance) -> Solution:
    """Grow source clusters along shortest paths, paying funnel plus ball growth."""
    sources = sub.sources
    groups = _group_members(sub)
    tgroups = _terminal_groups(groups)
    metric = sub.metric
    dist = metric.dist
    terms = np.array(sorted(tgroups))
    k = len(sources)
    # reach[a, i]: shortest funnel distance from cluster a to terminal terms[i]
    reach = dist[np.ix_(sources, terms)].copy()
    anchor = np.tile(np.array(sources)[:, None], (1, len(terms)))
    ball = np.zeros(k)
    members = [{s} for s in sources]
    trees = {s: [] for s in sources}
    witness = {}
    open_groups = set(groups)
    for a, s in enumerate(sources):
        for j in tgroups.get(s, ()):
            if j in open_groups:
                open_groups.discard(j)
                witness[j] = (s, s)
    ccost = sub.c[np.ix_(sources, terms)]
    while open_groups:
        live = np.array([any(j in open_groups for j in tgroups[int(t)]) for t in terms])
        delta = reach + np.maximum(ccost - ball[:, None], 0.0)
        delta[:, ~live] = np.inf
        # ties: lower source, then lower terminal (row-major argmin)
        a, i = np.unravel_index(int(np.argmin(delta)), delta.shape)
        s, t, r = sources[a], int(terms[i]), int(anchor[a, i])
        path = metric.path(r, t)
        # start from the last cluster node on the path so the tree stays acyclic
        start = max(p for p, x in enumerate(path) if x in members[a])
        path = path[start:]
        trees[s].extend(zip(path, path[1:]))
        ball[a] = max(ball[a], ccost[a, i])
        for j in tgroups[t]:
            if j in open_groups:
                open_groups.discard(j)
                witness[j] = (s, t)
        fresh = [x for x in path if x not in members[a]]
        members[a].update(fresh)
        if fresh:
            block = dist[np.ix_(fresh, terms)]
            low = block.min(axis=0)
            arg = np.asarray(fresh)[np.argmin(block, axis=0)]
            better = low < reach[a]
            reach[a, better] = low[better]
            anchor[a, better] = arg[better]
    return _finish(sub, trees, witness)


def smallest_edge(sub: Instance) -> Solution:
    """Kruskal-style growth over all node pairs, then pruning.

    Edges are added in increasing ``d`` unless they close a cycle or join
    two source components. Growth stops once every demanded group touches a
    sourced component. Pruning drops sourceless components and then, from
    the heaviest edge down, every edge whose removal keeps all groups
    connected to a source.
    """
    sources = sub.sources
    groups = _group_members(sub)
    n = sub.n
    src_set = set(sources)
    iu, ju = np.triu_indices(n, k=1)
    w = sub.d[iu, ju]
    order = np.lexsort((ju, iu, w))

    parent = list(range(n))
    comp_src = [x if x in src_set else -1 for x in range(n)]
    comp_nodes = [[x] for x in range(n)]
    node_groups: dict[int, list[int]] = {}
    for j, ms in groups.items():
        for t in ms:
            node_groups.setdefault(t, []).append(j)
    covered = set()
    for s in sources:
        covered.update(node_groups.get(s, ()))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for e in order:
        if len(covered) == len(groups):
            break
        u, v = int(iu[e]), int(ju[e])
        ru, rv = find(u), find(v)
        if ru == rv or (comp_src[ru] >= 0 and comp_src[rv] >= 0):
            continue
        if len(comp_nodes[ru]) < len(comp_nodes[rv]):
            ru, rv = rv, ru
        newly = []
        if comp_src[ru] >= 0 and comp_src[rv] < 0:
            newly = comp_nodes[rv]
        elif comp_src[rv] >= 0 and comp_src[ru] < 0:
            newly = comp_nodes[ru]
        parent[rv] = ru
        comp_src[ru] = max(comp_src[ru], comp_src[rv])
        comp_nodes[ru].extend(comp_nodes[rv])
        comp_nodes[rv] = []
        edges.append((u, v))
        for x in newly:
            covered.update(node_groups.get(x, ()))

    edges = _prune(edges, sources, groups, sub.d)
    adj = _adjacency(edges)
    trees = {}
    witness = {}
    for s in sources:
        comp = _reach(adj, [s])
        trees[s] = [e for e in edges if e[0] in comp]
        for j, ms in groups.items():
            hits = [t for t in ms if t in comp]
            if hits and j not in witness:
                t = min(hits, key=lambda t: (sub.c[s, t], t))
                witness[j] = (s, t)
    return _finish(sub, trees, witness)


def _adjacency(edges):
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


def _reach(adj, starts) -> set[int]:
    seen = set(starts)
    stack = list(starts)
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _feasible(edges, sources, groups) -> bool:
    seen = _reach(_adjacency(edges), sources)
    return all(any(t in seen for t in ms) for ms in groups.values())


def _prune(edges, sources, groups, d):
    seen = _reach(_adjacency(edges), sources)
    edges = [e for e in edges if e[0] in seen]
    for e in sorted(edges, key=lambda e: (d[e], e), reverse=True):
        trial = [x for x in edges if x != e]
        if _feasible(trial, sources, groups):
            seen = _reach(_adjacency(trial), sources)
            edges = [x for x in trial if x[0] in seen]
    return sorted(norm_edge(u, v) for u, v in edges)
