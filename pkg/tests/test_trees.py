import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anycast.errors import InvalidInputError, UnsupportedSizeError
from anycast.model import EuclideanLayout, euclidean_weights, metric_completion, tree_problem
from anycast.trees import exact_steiner_tree, k_mst, mst


def sq(pts):
    return euclidean_weights(EuclideanLayout(np.asarray(pts, dtype=float)))[1]


def kruskal_weight(w, nodes):
    """Plain Kruskal with a dict union-find; used as an independent reference."""
    nodes = list(nodes)
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    total = 0.0
    for wt, u, v in sorted((w[u, v], u, v) for u, v in itertools.combinations(nodes, 2)):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += wt
    return total


def all_spanning_tree_weights(w):
    """Weight of every labelled tree on n nodes, decoded from all Pruefer sequences at once."""
    n = w.shape[0]
    seqs = np.array(list(itertools.product(range(n), repeat=n - 2)), dtype=np.int64).reshape(-1, n - 2)
    rows = np.arange(len(seqs))
    deg = np.ones((len(seqs), n), dtype=np.int64)
    for col in range(n - 2):
        np.add.at(deg, (rows, seqs[:, col]), 1)
    total = np.zeros(len(seqs))
    for col in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)
        total += w[leaf, seqs[:, col]]
        deg[rows, leaf] -= 1
        deg[rows, seqs[:, col]] -= 1
    last = np.argsort(deg != 1, axis=1, kind="stable")[:, :2]
    total += w[last[:, 0], last[:, 1]]
    return total


class TestMst:
    def test_unit_square(self):
        t = mst(range(4), sq([[0, 0], [1, 0], [1, 1], [0, 1]]))
        assert t.weight == 3.0
        assert len(t.edges) == 3

    def test_two_points(self):
        assert mst([0, 1], sq([[0, 0], [3, 4]])).weight == 25.0

    def test_single_node(self):
        t = mst([4], np.zeros((5, 5)))
        assert t.edges == () and t.weight == 0.0

    def test_prufer_decoder_counts_cayley(self):
        w = np.ones((5, 5))
        assert len(all_spanning_tree_weights(w)) == 5 ** 3

    def test_matches_exhaustive_trees(self, backend):
        rng = np.random.default_rng(42)
        for _ in range(3):
            w = sq(rng.random((8, 2)))
            assert mst(range(8), w).weight == pytest.approx(all_spanning_tree_weights(w).min(), abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 30), st.integers(0, 2**31))
    def test_matches_kruskal(self, n, seed):
        w = sq(np.random.default_rng(seed).random((n, 2)))
        t = mst(range(n), w)
        assert t.weight == pytest.approx(kruskal_weight(w, range(n)), abs=1e-12)
        assert tree_problem(t.root, t.edges) is None

    def test_subset_and_root(self):
        w = sq([[0, 0], [5, 5], [1, 0], [2, 0]])
        t = mst([0, 2, 3], w, root=3)
        assert t.root == 3 and t.weight == 2.0 and 1 not in t.nodes
        with pytest.raises(InvalidInputError):
            mst([0, 2], w, root=1)
        with pytest.raises(InvalidInputError):
            mst([], w)


def steiner_by_relay_subsets(metric, terminals, relays):
    """Steiner tree in a metric = cheapest MST over terminals plus some relay subset."""
    best = np.inf
    for k in range(len(relays) + 1):
        for extra in itertools.combinations(relays, k):
            best = min(best, kruskal_weight(metric, list(terminals) + list(extra)))
    return best


class TestSteiner:
    def test_center_relay(self):
        # three corners of a square plus its centre: the centre saves weight
        pts = [[0, 0], [2, 0], [0, 2], [1, 1]]
        w = sq(pts)
        t = exact_steiner_tree(w, [0, 1, 2], [3])
        assert 3 in t.nodes
        assert t.weight == 6.0
        assert mst([0, 1, 2], w).weight == 8.0

    def test_raw_edges_are_realized(self):
        # candidates are used through the closure but returned as raw edges
        w = sq([[0, 0], [2, 0], [1, 0]])
        t = exact_steiner_tree(w, [0, 1], [2])
        assert sorted(t.edges) == [(0, 2), (1, 2)]
        assert t.weight == 2.0

    def test_matches_relay_enumeration(self, backend):
        rng = np.random.default_rng(8)
        for _ in range(10):
            raw = rng.uniform(0.1, 3, (7, 7))
            raw = np.triu(raw, 1)
            raw = raw + raw.T
            metric = metric_completion(raw)
            terms, relays = [0, 1, 2, 3], [4, 5, 6]
            t = exact_steiner_tree(metric, terms, relays)
            assert t.weight == pytest.approx(steiner_by_relay_subsets(metric, terms, relays), abs=1e-9)
            assert set(terms) <= t.nodes
            assert tree_problem(t.root, t.edges) is None

    def test_too_many_terminals(self):
        with pytest.raises(UnsupportedSizeError):
            exact_steiner_tree(np.zeros((20, 20)), range(15), [])


def kmst_by_subsets(metric, root, others, k):
    best = np.inf
    for extra in itertools.combinations(others, k - 1):
        best = min(best, kruskal_weight(metric, (root,) + extra))
    return best


class TestKMst:
    def test_line(self):
        w = sq([[0, 0], [1, 0], [2, 0], [-3, 0]])
        assert k_mst(0, [1, 2, 3], w, 3, mode="exact").weight == 2.0
        assert k_mst(0, [1, 2, 3], w, 1).weight == 0.0

    def test_exact_matches_enumeration(self, backend):
        rng = np.random.default_rng(21)
        for _ in range(15):
            n = int(rng.integers(2, 10))
            w = sq(rng.random((n, 2)))
            k = int(rng.integers(1, n + 1))
            t = k_mst(0, range(1, n), w, k, mode="exact")
            assert t.weight == pytest.approx(kmst_by_subsets(w, 0, tuple(range(1, n)), k), abs=1e-12)
            assert len(t.nodes) == k and 0 in t.nodes

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 2**31), st.data())
    def test_heuristic_never_beats_exact(self, n, seed, data):
        w = sq(np.random.default_rng(seed).random((n, 2)))
        k = data.draw(st.integers(1, n))
        exact = k_mst(0, range(1, n), w, k, mode="exact")
        greedy = k_mst(0, range(1, n), w, k, mode="heuristic")
        assert greedy.approximate and not exact.approximate
        assert greedy.weight >= exact.weight - 1e-12
        assert len(greedy.nodes) == k

    def test_bad_arguments(self):
        w = np.zeros((3, 3))
        with pytest.raises(InvalidInputError):
            k_mst(0, [1, 2], w, 4)
        with pytest.raises(InvalidInputError):
            k_mst(0, [1, 2], w, 2, mode="magic")
        with pytest.raises(UnsupportedSizeError):
            k_mst(0, range(1, 30), np.zeros((30, 30)), 3, mode="exact")
