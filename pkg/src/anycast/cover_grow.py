"""Cover-and-Grow: greedy set cover over candidate balls, then MST funnels.

Every (source, radius) pair where the radius reaches some demanded terminal
is a candidate set whose elements are the destination groups with a
terminal inside. Each round picks the candidate with the lowest
ball-cost per newly satisfied group and wires one representative terminal
per newly satisfied group to the source with an MST.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from anycast.errors import UnsupportedInstanceError
from anycast.model import TOL, Instance, Solution
from anycast.trees import mst


@dataclass(frozen=True)
class CandidateBall:
    source: int
    radius_cost: float
    covered_groups: frozenset[int]


@dataclass(frozen=True)
class Iteration:
    source: int
    radius_cost: float
    new_groups: tuple[int, ...]
    representatives: tuple[int, ...]
    tree_weight: float


def _radii(values: np.ndarray) -> list[float]:
    out: list[float] = []
    for v in np.sort(values):
        if not out or v > out[-1] + TOL:
            out.append(float(v))
    return out


def _group_terminals(sub: Instance) -> dict[int, np.ndarray]:
    return {j: np.array(sorted(sub.dest_groups[j])) for j in sub.demanded_groups()}


def candidate_balls(sub: Instance, open_groups=None) -> list[CandidateBall]:
    """Candidate balls sorted by (source, radius_cost).

    With ``open_groups`` only radii reaching a terminal of those groups are
    offered and coverage counts only those groups.
    """
    gterms = _group_terminals(sub)
    groups = list(gterms) if open_groups is None else [j for j in gterms if j in open_groups]
    out = []
    for s in sub.sources:
        # nearest terminal of each group decides when the group enters the ball
        reach = {j: float(sub.c[s, gterms[j]].min()) for j in groups}
        if not reach:
            continue
        allc = np.concatenate([sub.c[s, gterms[j]] for j in groups])
        for r in _radii(allc):
            covered = frozenset(j for j in groups if reach[j] <= r + TOL)
            if covered:
                out.append(CandidateBall(s, r, covered))
    return out


def cover_and_grow(sub: Instance) -> Solution:
    return cover_and_grow_trace(sub)[0]


def cover_and_grow_trace(sub: Instance) -> tuple[Solution, list[Iteration]]:
    if not sub.is_euclidean:
        raise UnsupportedInstanceError("cover_and_grow needs weights derived from a Euclidean layout")
    gterms = _group_terminals(sub)
    open_groups = set(gterms)
    sol = Solution()
    tree_nodes: dict[int, set[int]] = {}
    witness: dict[int, tuple[int, int]] = {}
    trace: list[Iteration] = []
    sources = np.array(sub.sources)
    glist = sorted(gterms)
    # reach[a, b]: cost for source a to get any terminal of group b into its ball
    reach = np.array([[sub.c[s, gterms[j]].min() for j in glist] for s in sources])
    while open_groups:
        cols = [b for b, j in enumerate(glist) if j in open_groups]
        terms = np.concatenate([gterms[glist[b]] for b in cols])
        best = None
        for a, s in enumerate(sources):
            row = np.sort(reach[a, cols])
            radii = np.unique(sub.c[s, terms])
            count = np.searchsorted(row, radii + TOL, side="right")
            ok = count > 0
            if not ok.any():
                continue
            ratio = radii[ok] / count[ok]
            i = int(np.lexsort((radii[ok], ratio))[0])
            key = (float(ratio[i]), float(radii[ok][i]), int(s))
            if best is None or key < best:
                best = key
        r, s = best[1], best[2]
        a = int(np.searchsorted(sources, s))
        covered = frozenset(glist[b] for b in cols if reach[a, b] <= r + TOL)
        cand = CandidateBall(s, r, covered)
        s, r = cand.source, cand.radius_cost
        reps = []
        for j in sorted(cand.covered_groups):
            ts = gterms[j]
            inside = ts[sub.c[s, ts] <= r + TOL]
            t = int(min(inside, key=lambda t: (sub.d[s, t], t)))
            reps.append(t)
            witness[j] = (s, t)
        step = mst({s, *reps}, sub.d, root=s)
        trace.append(Iteration(s, r, tuple(sorted(cand.covered_groups)), tuple(reps), step.weight))
        nodes = tree_nodes.setdefault(s, {s})
        nodes.update(reps)
        sol.balls[s] = max(sol.balls.get(s, 0.0), r)
        open_groups -= cand.covered_groups
    for s, nodes in tree_nodes.items():
        sol.funnel_trees[s] = list(mst(nodes, sub.d, root=s).edges)
    for k, (_, j) in enumerate(sub.demands):
        sol.assignment[k] = witness[j]
    sol.meta["iterations"] = len(trace)
    return sol, trace
