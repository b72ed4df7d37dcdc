import itertools

import numpy as np
import pytest

from anycast import kernels
from anycast.model import EuclideanLayout, Instance

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        print(ACCEPTANCE_LINES[-1])

    return record


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "cython":
        if kernels.compiled_backend is None:
            pytest.skip("compiled kernels not built")
        monkeypatch.setattr(kernels, "backend", kernels.compiled_backend)
    else:
        monkeypatch.setattr(kernels, "backend", kernels.python_backend)
    return request.param


def star(layout_pts, sources, groups, kappa=2.0):
    """Euclidean star instance: one source group, one demand per group."""
    return Instance.from_layout(
        EuclideanLayout(np.asarray(layout_pts, dtype=float), kappa),
        [sources],
        groups,
        [(0, j) for j in range(len(groups))],
    )


def tiny_euclidean(rng, n_sources, group_sizes, relays=0):
    n = n_sources + sum(group_sizes) + relays
    pts = rng.random((n, 2))
    groups, k = [], n_sources
    for size in group_sizes:
        groups.append(list(range(k, k + size)))
        k += size
    return star(pts, list(range(n_sources)), groups)


def tiny_general(rng, n_sources, group_sizes, relays=0):
    """Random broadcast costs and a random (non-metric) symmetric funnel matrix."""
    n = n_sources + sum(group_sizes) + relays
    c = rng.uniform(0.1, 2.0, (n, n))
    np.fill_diagonal(c, 0.0)
    d = rng.uniform(0.1, 2.0, (n, n))
    d = np.triu(d, 1)
    d = d + d.T
    groups, k = [], n_sources
    for size in group_sizes:
        groups.append(list(range(k, k + size)))
        k += size
    return Instance(c, d, [range(n_sources)], groups, [(0, j) for j in range(len(groups))])


def random_tiny(rng, general=False, max_nodes=8, singleton=False):
    n_sources = int(rng.integers(1, 4))
    budget = max_nodes - n_sources
    q = int(rng.integers(1, min(4, budget) + 1))
    if singleton:
        sizes = [1] * q
    else:
        sizes = [1] * q
        for _ in range(int(rng.integers(0, budget - q + 1))):
            sizes[int(rng.integers(q))] += 1
    make = tiny_general if general else tiny_euclidean
    return make(rng, n_sources, sizes)


def min_set_cover(sets, universe):
    for k in range(1, len(sets) + 1):
        for combo in itertools.combinations(range(len(sets)), k):
            if set().union(*(sets[i] for i in combo)) >= set(universe):
                return k
    raise ValueError("no cover")
