"""Name -> solver registry, plus whole-instance solving via decomposition."""
from __future__ import annotations

from typing import Callable

from anycast.cover_grow import cover_and_grow
from anycast.g2s import g2s_greedy
from anycast.heuristics import smallest_edge, smallest_increment, t_adaptive, t_centric
from anycast.model import Instance, Solution, combine_solutions, decompose_demands
from anycast.oracle import brute_force_optimal
from anycast.reduction import build_set_connectivity, lift_solution, solve_set_connectivity_exact


def _oracle(sub: Instance) -> Solution:
    return brute_force_optimal(sub).solution


def _set_connectivity(sub: Instance) -> Solution:
    sc = build_set_connectivity(sub)
    edges, _ = solve_set_connectivity_exact(sc)
    return lift_solution(sc, edges, sub)


SOLVERS: dict[str, Callable[[Instance], Solution]] = {
    "cover_and_grow": cover_and_grow,
    "g2s_greedy": g2s_greedy,
    "smallest_edge": smallest_edge,
    "t_centric": t_centric,
    "t_adaptive": t_adaptive,
    "smallest_increment": smallest_increment,
    "oracle": _oracle,
    "set_connectivity": _set_connectivity,
}

# the five solvers compared in the benchmark
BENCH_SOLVERS = ("cover_and_grow", "smallest_edge", "t_centric", "t_adaptive", "smallest_increment")


def solve(instance: Instance, name: str) -> Solution:
    """Run solver ``name`` on every source group of ``instance`` and merge."""
    try:
        fn = SOLVERS[name]
    except KeyError:
        raise KeyError(f"unknown solver {name!r}; registered: {', '.join(SOLVERS)}") from None
    parts = [(sub, fn(sub.instance)) for sub in decompose_demands(instance)]
    return combine_solutions(instance, parts)
