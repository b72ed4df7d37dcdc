"""Time the compiled kernels against the numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from anycast import _pykernels, kernels


def sq_dist(n, rng):
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    return (diff**2).sum(-1)


def cases(rng):
    w100 = sq_dist(100, rng)
    w200 = sq_dist(200, rng)
    w18 = sq_dist(18, rng)
    w12 = sq_dist(12, rng)
    dist12 = _pykernels.floyd_warshall(w12)[0]
    return [
        ("floyd_warshall n=100", "floyd_warshall", (w100,)),
        ("prim_mst n=200", "prim_mst", (w200,)),
        ("kmst_exact n=18 k=9", "kmst_exact", (w18, 9)),
        ("dreyfus_wagner n=12 groups=8", "dreyfus_wagner", (dist12, dist12[:8].copy())),
    ]


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . --no-build-isolation")
    print(f"{'kernel':<30} {'cython (ms)':>12} {'python (ms)':>12} {'speedup':>8}")
    for label, name, fargs in cases(np.random.default_rng(args.seed)):
        fast = best_of(getattr(kernels.compiled_backend, name), fargs, args.repeat)
        slow = best_of(getattr(_pykernels, name), fargs, max(1, args.repeat // 2))
        print(f"{label:<30} {fast * 1e3:>12.3f} {slow * 1e3:>12.3f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
