"""Instance generators: random layouts, set-cover constructions, T-Centric trap."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from anycast.errors import InvalidInputError
from anycast.model import EuclideanLayout, Instance, metric_completion
from anycast.solvers import BENCH_SOLVERS

DISTRIBUTIONS = ("uniform", "gaussian")


@dataclass(frozen=True)
class BenchConfig:
    distributions: tuple[str, ...] = DISTRIBUTIONS
    source_sizes: tuple[int, ...] = (1, 4, 16, 64)
    q: int = 10
    group_size: int = 10
    trials: int = 100
    kappa: float = 2.0
    seed: int = 0
    solvers: tuple[str, ...] = BENCH_SOLVERS

    def __post_init__(self):
        object.__setattr__(self, "distributions", tuple(self.distributions))
        object.__setattr__(self, "source_sizes", tuple(int(s) for s in self.source_sizes))
        object.__setattr__(self, "solvers", tuple(self.solvers))
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        if min(self.source_sizes, default=0) < 1 or self.q < 1 or self.group_size < 1:
            raise InvalidInputError("all sizes must be >= 1")
        for dist in self.distributions:
            if dist not in DISTRIBUTIONS:
                raise InvalidInputError(f"unknown distribution {dist!r}")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return {
            "distributions": list(self.distributions),
            "source_sizes": list(self.source_sizes),
            "q": self.q,
            "group_size": self.group_size,
            "trials": self.trials,
            "kappa": self.kappa,
            "seed": self.seed,
            "solvers": list(self.solvers),
        }


def trial_rng(seed: int, distribution: str, s_size: int, trial_index: int) -> np.random.Generator:
    """Independent, platform-stable PCG64 stream per trial."""
    key = [seed, DISTRIBUTIONS.index(distribution), s_size, trial_index]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def gen_random(config: BenchConfig, trial_index: int, s_size: int | None = None, distribution: str | None = None) -> Instance:
    """Sources first, then ``q`` groups of ``group_size`` terminals; star demands."""
    s_size = config.source_sizes[0] if s_size is None else s_size
    distribution = config.distributions[0] if distribution is None else distribution
    rng = trial_rng(config.seed, distribution, s_size, trial_index)
    n = s_size + config.q * config.group_size
    if distribution == "uniform":
        pts = rng.random((n, 2))
    else:
        pts = rng.standard_normal((n, 2))
    groups = [
        range(s_size + j * config.group_size, s_size + (j + 1) * config.group_size) for j in range(config.q)
    ]
    return Instance.from_layout(
        EuclideanLayout(pts, config.kappa),
        [range(s_size)],
        groups,
        [(0, j) for j in range(config.q)],
    )


def _elements(sets) -> list:
    universe = set()
    for s in sets:
        universe |= set(s)
    return sorted(universe)


def gen_setcover_euclidean(sets, universe=None) -> Instance:
    """Plane embedding of a set system: one far-apart source per set, its
    elements stacked one unit away from it."""
    sets = [frozenset(s) for s in sets]
    if not sets:
        raise InvalidInputError("need at least one set")
    elements = _elements(sets) if universe is None else sorted(universe)
    missing = [e for e in elements if not any(e in s for s in sets)]
    if missing:
        raise InvalidInputError(f"elements {missing} are in no set")
    m = len(sets)
    terminals = [(i, e) for i, s in enumerate(sets) for e in sorted(s)]
    n = m + len(terminals)
    spacing = 10.0 * n + 1.0
    pts = np.zeros((n, 2))
    pts[:m, 0] = np.arange(m) * spacing
    groups: dict = {e: [] for e in elements}
    for k, (i, e) in enumerate(terminals):
        pts[m + k] = (i * spacing, 1.0)
        groups[e].append(m + k)
    return Instance.from_layout(
        EuclideanLayout(pts, 2.0),
        [range(m)],
        [groups[e] for e in elements],
        [(0, j) for j in range(len(elements))],
    )


def gen_setcover_g2s(sets, L: float | None = None, M: float | None = None) -> Instance:
    """Singleton-group instance whose cheap balls are exactly the sets."""
    sets = [frozenset(s) for s in sets]
    if not sets:
        raise InvalidInputError("need at least one set")
    elements = _elements(sets)
    m, ne = len(sets), len(elements)
    if L is None:
        L = 100.0 * ne
    if M is None:
        M = 100.0 * m * L * max(math.log(ne), 1.0)
    if L <= ne or M <= L:
        raise InvalidInputError("need M > L > number of elements")
    n = m + ne
    pos = {e: m + k for k, e in enumerate(elements)}
    raw = np.full((n, n), np.inf)
    np.fill_diagonal(raw, 0.0)
    c = np.full((n, n), M)
    np.fill_diagonal(c, 0.0)
    for i, s in enumerate(sets):
        for e in s:
            raw[i, pos[e]] = raw[pos[e], i] = 1.0
            c[i, pos[e]] = L
    d = metric_completion(raw)
    # pairs in different components of the set/element graph stay at distance M
    d[np.isinf(d)] = M
    return Instance(c, d, [range(m)], [[pos[e]] for e in elements], [(0, j) for j in range(ne)])


def gen_pathological_tcentric(q: int) -> Instance:
    """Sources on the bottom edge; group i pairs the point above source i with its own copy of (0, 1)."""
    if q < 2:
        raise InvalidInputError("q must be >= 2")
    xs = np.arange(1, q + 1) / q
    pts = [(x, 0.0) for x in xs]
    groups = []
    for i, x in enumerate(xs):
        base = len(pts)
        pts.append((x, 1.0))
        pts.append((0.0, 1.0))
        groups.append([base, base + 1])
    return Instance.from_layout(
        EuclideanLayout(np.array(pts), 2.0),
        [range(q)],
        groups,
        [(0, j) for j in range(q)],
    )
