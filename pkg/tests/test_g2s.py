import itertools

import numpy as np
import pytest

from anycast.bench.generators import gen_setcover_g2s
from anycast.errors import UnsupportedInstanceError
from anycast.g2s import g2s_greedy, min_density_assignment
from anycast.model import Instance, evaluate_cost, harmonic, validate_solution
from anycast.oracle import brute_force_optimal
from conftest import min_set_cover, random_tiny, star
from test_trees import kruskal_weight


def two_terminal_instance():
    c = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0.0]])
    d = np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0.0]])
    return Instance(c, d, [[0]], [[1], [2]], [(0, 0), (0, 1)])


def brute_min_density(inst, terminals):
    """Every source and every nonempty terminal subset, tree = best MST over subset plus any relays."""
    dist = inst.metric.dist
    best = np.inf
    for s in inst.sources:
        for k in range(1, len(terminals) + 1):
            for ts in itertools.combinations(terminals, k):
                tree = kruskal_weight(dist, sorted({s, *ts}))
                best = min(best, (tree + max(inst.c[s, t] for t in ts)) / k)
    return best


class TestDensity:
    def test_two_terminals(self):
        inst = two_terminal_instance()
        pick = min_density_assignment(inst, [1, 2])
        assert pick.density == 2.0
        assert pick.terminals == (1,)
        assert brute_min_density(inst, [1, 2]) == 2.0
        # both terminals: (1 + 2 + 2) / 2
        assert (inst.d[0, 1] + inst.d[0, 2] + inst.c[0, 2]) / 2 == 2.5

    def test_matches_subset_enumeration(self, backend):
        rng = np.random.default_rng(31)
        for k in range(20):
            inst = random_tiny(rng, general=bool(k % 2), singleton=True)
            terms = sorted(t for g in inst.dest_groups for t in g)
            pick = min_density_assignment(inst, terms, mode="exact")
            assert pick.density == pytest.approx(brute_min_density(inst, terms), abs=1e-9)

    def test_equal_sets_pick_a_whole_set(self):
        sets = [[1, 2, 3], [4, 5, 6], [1, 4, 7]]
        inst = gen_setcover_g2s(sets, L=50.0)
        pick = min_density_assignment(inst, [t for g in inst.dest_groups for t in g])
        assert pick.density == pytest.approx((3 + 50.0) / 3)
        assert len(pick.terminals) == 3


class TestSetCoverInstances:
    def test_dominating_set_single_round(self):
        inst = gen_setcover_g2s([[1, 2, 3, 4], [1], [2, 3]], L=40.0)
        sol = g2s_greedy(inst)
        assert len(sol.meta["rounds"]) == 1
        assert evaluate_cost(inst, sol).total == 40.0 + 4

    def test_disjoint_sets(self):
        inst = gen_setcover_g2s([[1, 2], [3]], L=30.0)
        sol = g2s_greedy(inst)
        assert len(sol.funnel_trees) == 2
        assert evaluate_cost(inst, sol).total == 2 * 30.0 + 3

    def test_oracle_is_cover_times_L_plus_n(self):
        rng = np.random.default_rng(37)
        for _ in range(8):
            m = int(rng.integers(1, 4))
            sets = [sorted(set(rng.choice(5, size=int(rng.integers(1, 4)), replace=False).tolist())) for _ in range(m)]
            universe = sorted(set().union(*sets))
            L = 10.0 * len(universe) + 7
            inst = gen_setcover_g2s(sets, L=L)
            opt = brute_force_optimal(inst).cost
            assert opt == pytest.approx(min_set_cover(sets, universe) * L + len(universe))
            sol = g2s_greedy(inst)
            # no solution ever pays the huge off-set broadcast cost
            assert all(b == L for b in sol.balls.values())


class TestGreedy:
    def test_rejects_group_of_two(self):
        inst = star([[0, 0], [1, 0], [2, 0]], [0], [[1, 2]])
        with pytest.raises(UnsupportedInstanceError):
            g2s_greedy(inst)

    def test_ratio_against_oracle(self):
        rng = np.random.default_rng(41)
        for k in range(20):
            inst = random_tiny(rng, general=bool(k % 2), singleton=True)
            sol = g2s_greedy(inst, mode="exact")
            assert validate_solution(inst, sol).ok
            assert not sol.meta["approximate"]
            n = len(inst.demanded_terminals())
            opt = brute_force_optimal(inst).cost
            assert evaluate_cost(inst, sol).total <= 2 * harmonic(n) * opt + 1e-9

    def test_heuristic_mode_flagged(self):
        inst = two_terminal_instance()
        assert g2s_greedy(inst, mode="heuristic").meta["approximate"]
