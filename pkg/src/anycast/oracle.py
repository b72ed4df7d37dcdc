"""Exhaustive optimum for desk-sized star instances.

For a fixed set ``W`` of witness terminals served by source ``s`` the best
ball is ``max c(s, t)`` over ``W`` and the best funnel tree is a Steiner tree
on ``{s} + W`` with every node allowed as relay. One Dreyfus-Wagner table per
source prices every ``W`` at once; a subset DP over covered groups then
chooses one ``W`` per source.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from anycast.errors import UnsupportedSizeError
from anycast.model import Instance, Solution, evaluate_cost, realize_tree
from anycast.trees import SteinerTable

MAX_SOURCES = 3
MAX_TERMINALS = 8
MAX_NODES = 12


@dataclass
class OracleResult:
    solution: Solution
    cost: float
    explored: int


def check_size(sub: Instance) -> None:
    k = len(sub.sources)
    m = len(sub.demanded_terminals())
    if k > MAX_SOURCES or m > MAX_TERMINALS or sub.n > MAX_NODES:
        raise UnsupportedSizeError(
            f"oracle handles at most {MAX_SOURCES} sources, {MAX_TERMINALS} demanded terminals "
            f"and {MAX_NODES} nodes; got {k}, {m} and {sub.n}"
        )


def brute_force_optimal(sub: Instance, relays: str = "all") -> OracleResult:
    """Optimal solution of a single-source-group instance.

    ``relays="all"`` lets funnel trees branch anywhere. ``relays="ball"``
    restricts tree vertices to the source and demanded terminals inside its
    ball (paths between them still follow shortest ``d`` routes).
    """
    check_size(sub)
    sources = sub.sources
    terms = sub.demanded_terminals()
    groups = sub.demanded_groups()
    gbit = {j: 1 << i for i, j in enumerate(groups)}
    tcover = []
    for t in terms:
        bits = 0
        for j in groups:
            if t in sub.dest_groups[j]:
                bits |= gbit[j]
        tcover.append(bits)
    m = len(terms)
    nmask = 1 << m
    cover_of = np.zeros(nmask, dtype=np.int64)
    for w in range(1, nmask):
        low = (w & -w).bit_length() - 1
        cover_of[w] = cover_of[w & (w - 1)] | tcover[low]
    all_groups = (1 << len(groups)) - 1
    dist = sub.metric.dist

    explored = 0
    per_source = []
    tables = {}
    for s in sources:
        cs = np.array([sub.c[s, t] for t in terms])
        if relays == "all":
            table = tables[s] = SteinerTable(dist, [[t] for t in terms])
            price = lambda w, s=s, table=table: table.cost(w, s)
        elif relays == "ball":
            price = _ball_pricer(sub, dist, s, terms)
        else:
            raise ValueError(f"unknown relay policy {relays!r}")
        # best[g] = cheapest witness set whose covered groups are exactly g
        best = np.full(all_groups + 1, np.inf)
        arg = np.zeros(all_groups + 1, dtype=np.int64)
        best[0] = 0.0
        for w in range(1, nmask):
            explored += 1
            ball = max(cs[i] for i in range(m) if w >> i & 1)
            h = ball + price(w)
            g = int(cover_of[w])
            if h < best[g]:
                best[g] = h
                arg[g] = w
        per_source.append((best, arg))

    # F[g] = cheapest way for the sources so far to cover exactly g
    F = np.full(all_groups + 1, np.inf)
    F[0] = 0.0
    choices = []
    for best, _ in per_source:
        G = np.full(all_groups + 1, np.inf)
        pick = np.zeros((all_groups + 1, 2), dtype=np.int64)
        for a in np.flatnonzero(np.isfinite(F)):
            for b in np.flatnonzero(np.isfinite(best)):
                explored += 1
                val = F[a] + best[b]
                u = int(a) | int(b)
                if val < G[u]:
                    G[u] = val
                    pick[u] = (a, b)
        choices.append(pick)
        F = G

    witness_sets = [0] * len(sources)
    g = all_groups
    for idx in range(len(sources) - 1, -1, -1):
        a, b = choices[idx][g]
        witness_sets[idx] = int(per_source[idx][1][b]) if b else 0
        g = int(a)

    sol = Solution()
    closure_trees = {}
    for s, w in zip(sources, witness_sets):
        if not w:
            continue
        chosen = [terms[i] for i in range(m) if w >> i & 1]
        sol.balls[s] = float(max(sub.c[s, t] for t in chosen))
        if relays == "all":
            closure = tables[s].edges(w, s)
        else:
            closure = _ball_table(sub, dist, s, terms, chosen)[1]
        closure_trees[s] = closure
        sol.funnel_trees[s] = realize_tree(sub, s, closure)
    for k, (_, j) in enumerate(sub.demands):
        for s, w in zip(sources, witness_sets):
            hits = [terms[i] for i in range(m) if w >> i & 1 and terms[i] in sub.dest_groups[j]]
            if hits:
                t = min(hits, key=lambda t: (sub.c[s, t], t))
                sol.assignment[k] = (s, t)
                break
    sol.meta["explored"] = explored
    # trees in the closure metric, before expansion into raw edges
    sol.meta["closure_trees"] = closure_trees
    sol.meta["closure_cost"] = float(F[all_groups])
    return OracleResult(sol, evaluate_cost(sub, sol).total, explored)


def _ball_pricer(sub, dist, s, terms):
    def price(w):
        chosen = [terms[i] for i in range(len(terms)) if w >> i & 1]
        return _ball_table(sub, dist, s, terms, chosen)[0]

    return price


def _ball_table(sub, dist, s, terms, chosen):
    ball = max(sub.c[s, t] for t in chosen)
    verts = sorted({s, *chosen, *(t for t in terms if sub.c[s, t] <= ball)})
    pos = {v: i for i, v in enumerate(verts)}
    table = SteinerTable(dist[np.ix_(verts, verts)], [[pos[t]] for t in chosen if t != s])
    cost = table.cost(table.full, pos[s])
    edges = [(verts[u], verts[v]) for u, v in table.edges(table.full, pos[s])]
    return cost, edges
