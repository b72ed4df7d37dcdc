"""Greedy for singleton destination groups via repeated minimum-density assignment.

Funnel distances are taken from the metric closure of ``d``; the final
trees are expanded back into real edges.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from anycast.errors import InvalidInputError, UnsupportedInstanceError
from anycast.model import TOL, Instance, Solution, realize_tree
from anycast.trees import MAX_EXACT_KMST_NODES, Tree, k_mst, mst


@dataclass(frozen=True)
class DensityAssignment:
    source: int
    tree: Tree
    terminals: tuple[int, ...]
    radius_cost: float
    density: float
    mode: str


def singleton_terminals(sub: Instance) -> list[int]:
    out = []
    for j in sub.demanded_groups():
        group = sub.dest_groups[j]
        if len(group) != 1:
            raise UnsupportedInstanceError("g2s needs every demanded destination group to be a singleton")
        out.append(next(iter(group)))
    return sorted(set(out))


def min_density_assignment(sub: Instance, unassigned, mode: str = "auto") -> DensityAssignment:
    """Best (source, radius, k) choice; exact whenever k-MST runs exactly.

    ``mode`` is passed to :func:`k_mst`; ``auto`` goes exact while the
    eligible vertex count is at most 20.
    """
    unassigned = sorted(set(unassigned))
    if not unassigned:
        raise InvalidInputError("no unassigned terminals")
    dist = sub.metric.dist
    best = None
    for s in sub.sources:
        costs = sub.c[s, unassigned]
        radii = []
        for r in np.sort(costs):
            if not radii or r > radii[-1] + TOL:
                radii.append(float(r))
        for r in radii:
            eligible = [t for t, cst in zip(unassigned, costs) if cst <= r + TOL]
            verts = sorted({s, *eligible})
            used = mode if mode != "auto" else ("exact" if len(verts) <= MAX_EXACT_KMST_NODES else "heuristic")
            root_counts = s in eligible
            for size in range(1 if root_counts else 2, len(verts) + 1):
                tree = k_mst(s, verts, dist, size, used)
                terms = tuple(sorted(tree.nodes & set(eligible)))
                radius = float(max(sub.c[s, t] for t in terms))
                density = (tree.weight + radius) / len(terms)
                # ties: lower source, smaller radius, larger k
                key = (density, s, radius, -len(terms))
                if best is None or key < best[0]:
                    best = (key, DensityAssignment(s, tree, terms, radius, density, used))
    return best[1]


def g2s_greedy(sub: Instance, mode: str = "auto") -> Solution:
    terminals = singleton_terminals(sub)
    unassigned = set(terminals)
    owned: dict[int, set[int]] = {}
    nodes: dict[int, set[int]] = {}
    rounds = []
    while unassigned:
        pick = min_density_assignment(sub, unassigned, mode)
        s = pick.source
        owned.setdefault(s, set()).update(pick.terminals)
        nodes.setdefault(s, {s}).update(pick.tree.nodes)
        unassigned -= set(pick.terminals)
        rounds.append({"source": s, "terminals": list(pick.terminals), "density": pick.density, "mode": pick.mode})
    sol = Solution()
    dist = sub.metric.dist
    where = {}
    for s in sorted(owned):
        tree = mst(nodes[s], dist, root=s)
        sol.funnel_trees[s] = realize_tree(sub, s, tree.edges)
        sol.balls[s] = float(max(sub.c[s, t] for t in owned[s]))
        for t in owned[s]:
            where.setdefault(t, s)
    for k, (_, j) in enumerate(sub.demands):
        t = next(iter(sub.dest_groups[j]))
        sol.assignment[k] = (where[t], t)
    sol.meta["rounds"] = rounds
    sol.meta["approximate"] = any(r["mode"] == "heuristic" for r in rounds)
    return sol
