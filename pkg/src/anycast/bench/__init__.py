from anycast.bench.generators import (
    BenchConfig,
    gen_pathological_tcentric,
    gen_random,
    gen_setcover_euclidean,
    gen_setcover_g2s,
)
from anycast.bench.runner import BenchResult, TrialRecord, run_benchmark

__all__ = [
    "BenchConfig",
    "BenchResult",
    "TrialRecord",
    "gen_pathological_tcentric",
    "gen_random",
    "gen_setcover_euclidean",
    "gen_setcover_g2s",
    "run_benchmark",
]
