import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anycast.errors import InvalidInputError, InvalidSolutionError
from anycast.model import (
    EuclideanLayout,
    Instance,
    Solution,
    combine_solutions,
    decompose_demands,
    euclidean_weights,
    evaluate_cost,
    metric_completion,
    validate_solution,
)
from anycast.oracle import brute_force_optimal
from anycast.solvers import solve
from conftest import random_tiny, star


def simple_paths_closure(w):
    """All-pairs shortest path by enumerating every simple path (independent of Floyd-Warshall)."""
    n = w.shape[0]
    best = np.full((n, n), np.inf)
    for u in range(n):
        best[u, u] = 0.0
        rest = [x for x in range(n) if x != u]
        for k in range(len(rest) + 1):
            for mid in itertools.permutations(rest, k):
                path = (u,) + mid
                cost = sum(w[a, b] for a, b in zip(path, path[1:]))
                v = path[-1]
                best[u, v] = min(best[u, v], cost)
    return best


class TestMetricCompletion:
    def test_chain(self):
        d = np.array([[0, 1, 4], [1, 0, 1], [4, 1, 0]], dtype=float)
        assert metric_completion(d)[0, 2] == 2.0

    def test_metric_input_unchanged(self):
        pts = np.random.default_rng(3).random((6, 2))
        _, d = euclidean_weights(EuclideanLayout(pts, kappa=1.0 + 1.0))
        once = metric_completion(d)
        assert np.array_equal(metric_completion(once), once)

    def test_matches_path_enumeration(self, backend):
        rng = np.random.default_rng(11)
        w = rng.uniform(0, 5, (5, 5))
        w = np.triu(w, 1)
        w = w + w.T
        assert np.allclose(metric_completion(w), simple_paths_closure(w), atol=1e-12)

    def test_negative_rejected(self):
        d = np.zeros((2, 2))
        d[0, 1] = d[1, 0] = -1
        with pytest.raises(InvalidInputError):
            metric_completion(d)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 2**31))
    def test_idempotent_and_below_input(self, n, seed):
        rng = np.random.default_rng(seed)
        w = rng.uniform(0, 3, (n, n))
        w = np.triu(w, 1)
        w = w + w.T
        m = metric_completion(w)
        assert np.all(m <= w)
        assert np.allclose(metric_completion(m), m)
        # triangle inequality
        assert np.all(m[:, None, :] <= m[:, :, None] + m[None, :, :] + 1e-12)


class TestEuclideanWeights:
    def test_unit(self):
        c, d = euclidean_weights(EuclideanLayout(np.array([[0, 0], [1, 0.0]])))
        assert c[0, 1] == d[0, 1] == 1.0

    def test_relay_is_cheaper(self):
        c, d = euclidean_weights(EuclideanLayout(np.array([[0, 0], [2, 0], [1, 0.0]])))
        assert c[0, 1] == 4.0
        assert d[0, 2] + d[2, 1] == 2.0

    def test_kappa_three(self):
        c, _ = euclidean_weights(EuclideanLayout(np.array([[0, 0], [1, 1.0]]), kappa=3))
        assert c[0, 1] == pytest.approx(2 ** 1.5, abs=1e-12)
        assert c[0, 1] == pytest.approx(2.828427, abs=1e-6)

    def test_layout_checks(self):
        with pytest.raises(InvalidInputError):
            EuclideanLayout(np.zeros((2, 2)), kappa=1.5)
        with pytest.raises(InvalidInputError):
            EuclideanLayout(np.array([[0, np.inf], [0, 0]]))

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.1, 10), st.integers(0, 2**31))
    def test_squared_costs_scale_quadratically(self, alpha, seed):
        pts = np.random.default_rng(seed).random((5, 2))
        c1, _ = euclidean_weights(EuclideanLayout(pts))
        c2, _ = euclidean_weights(EuclideanLayout(pts * alpha))
        assert np.allclose(c2, alpha**2 * c1, rtol=1e-9, atol=1e-12)


class TestInstance:
    def test_invariants(self):
        with pytest.raises(InvalidInputError):
            Instance(np.zeros((2, 2)), np.zeros((2, 2)), [[]], [[1]], [(0, 0)])
        with pytest.raises(InvalidInputError):
            Instance(np.zeros((2, 2)), np.zeros((2, 2)), [[0]], [[1]], [(0, 3)])
        d = np.array([[0, 1], [2, 0.0]])
        with pytest.raises(InvalidInputError):
            Instance(np.zeros((2, 2)), d, [[0]], [[1]], [(0, 0)])

    def test_group_can_be_source_and_destination(self):
        inst = star([[0, 0], [1, 0]], [0, 1], [[0, 1]])
        assert inst.source_groups[0] == inst.dest_groups[0]


class TestDecompose:
    def make(self, demands, n_sources=2, n_dest=3):
        n = n_sources + n_dest
        pts = np.random.default_rng(0).random((n, 2))
        return Instance.from_layout(
            EuclideanLayout(pts), [[i] for i in range(n_sources)], [[n_sources + j] for j in range(n_dest)], demands
        )

    def test_two_groups(self):
        subs = decompose_demands(self.make([(0, 0), (1, 1)]))
        assert len(subs) == 2

    def test_idle_group_omitted(self):
        subs = decompose_demands(self.make([(0, 0), (0, 1)]))
        assert len(subs) == 1 and subs[0].group_index == 0

    def test_k23(self):
        subs = decompose_demands(self.make([(i, j) for i in range(2) for j in range(3)]))
        assert [len(s.instance.dest_groups) for s in subs] == [3, 3]
        for s in subs:
            assert len(s.instance.source_groups) == 1
            assert sorted(s.instance.demands) == [(0, 0), (0, 1), (0, 2)]

    def test_cost_additive(self):
        inst = self.make([(0, 0), (0, 1), (1, 2), (1, 0)])
        parts = [(sub, brute_force_optimal(sub.instance).solution) for sub in decompose_demands(inst)]
        merged = combine_solutions(inst, parts)
        total = sum(evaluate_cost(sub.instance, sol).total for sub, sol in parts)
        assert evaluate_cost(inst, merged).total == pytest.approx(total, abs=1e-12)
        assert validate_solution(inst, merged).ok


class TestEvaluateCost:
    def test_single_edge(self):
        inst = star([[0, 0], [1, 0]], [0], [[1]])
        sol = Solution({0: 1.0}, {0: [(0, 1)]}, {0: (0, 1)})
        assert evaluate_cost(inst, sol).total == 2.0

    def test_empty(self):
        inst = Instance(np.zeros((1, 1)), np.zeros((1, 1)), [[0]], [[0]], [])
        assert evaluate_cost(inst, Solution()).total == 0.0

    def test_shared_edge_paid_per_tree(self):
        d = np.array([[0, 3, 1], [3, 0, 1], [1, 1, 0.0]])
        inst = Instance(np.zeros((3, 3)), d, [[0], [1]], [[2]], [(0, 0), (1, 0)])
        sol = Solution({0: 0.0, 1: 0.0}, {0: [(0, 1)], 1: [(0, 1)]})
        assert evaluate_cost(inst, sol).funnel_cost == 6.0

    def test_unknown_node(self):
        inst = star([[0, 0], [1, 0]], [0], [[1]])
        with pytest.raises(InvalidSolutionError):
            evaluate_cost(inst, Solution({0: 1.0}, {0: [(0, 7)]}))

    def test_idle_source_costs_nothing(self):
        inst = star([[0, 0], [1, 0]], [0], [[1]])
        assert evaluate_cost(inst, Solution(balls={0: 5.0})).total == 0.0


class TestValidate:
    def test_ok(self):
        inst = star([[0, 0], [1, 0]], [0], [[1]])
        assert validate_solution(inst, Solution({0: 1.0}, {0: [(0, 1)]})).ok

    def test_terminal_missing_from_tree(self):
        inst = star([[0, 0], [1, 0], [0, 0.5]], [0], [[1]])
        rep = validate_solution(inst, Solution({0: 1.0}, {0: [(0, 2)]}))
        assert not rep.ok
        assert rep.violations == [(0, "covered terminal is not in the funnel tree")]

    def test_ball_too_small(self):
        inst = star([[0, 0], [1, 0]], [0], [[1]])
        rep = validate_solution(inst, Solution({0: 0.5}, {0: [(0, 1)]}))
        assert rep.violations[0][1].startswith("no ball")

    def test_cycle_reported(self):
        inst = star([[0, 0], [1, 0], [0, 1]], [0], [[1]])
        rep = validate_solution(inst, Solution({0: 1.0}, {0: [(0, 1), (1, 2), (0, 2)]}))
        assert not rep.ok and rep.tree_errors

    def test_zero_ball_on_colocated_terminal(self):
        inst = star([[0, 0], [0, 0]], [0], [[1]])
        assert validate_solution(inst, Solution({0: 0.0}, {0: [(0, 1)]})).ok

    def test_oracle_output_always_feasible(self):
        rng = np.random.default_rng(5)
        for k in range(100):
            inst = random_tiny(rng, general=bool(k % 2))
            assert validate_solution(inst, solve(inst, "oracle")).ok
