"""Command-line front end.

Exit codes: 0 success, 1 infeasible or invalid input, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from anycast import io
from anycast.bench.generators import (
    DISTRIBUTIONS,
    BenchConfig,
    gen_pathological_tcentric,
    gen_random,
    gen_setcover_euclidean,
    gen_setcover_g2s,
)
from anycast.errors import AnycastError
from anycast.model import decompose_demands, evaluate_cost, validate_solution
from anycast.solvers import SOLVERS, solve

log = logging.getLogger("anycast")


def _parse_sets(text: str) -> list[list[int]]:
    """``"1,2;2,3"`` -> ``[[1, 2], [2, 3]]``."""
    return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";") if part.strip()]


def _emit(payload: str, out: str | None) -> None:
    if out:
        Path(out).write_text(payload)
    else:
        print(payload)


def cmd_gen(args) -> int:
    if args.kind == "random":
        cfg = BenchConfig(
            distributions=(args.distribution,),
            source_sizes=(args.sources,),
            q=args.groups,
            group_size=args.group_size,
            kappa=args.kappa,
            seed=args.seed,
        )
        inst = gen_random(cfg, args.trial)
    elif args.kind == "setcover":
        inst = gen_setcover_euclidean(_parse_sets(args.sets))
    elif args.kind == "g2s-setcover":
        inst = gen_setcover_g2s(_parse_sets(args.sets), args.L, args.M)
    else:
        inst = gen_pathological_tcentric(args.q)
    _emit(json.dumps(io.instance_to_dict(inst)), args.out)
    return 0


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    sol = solve(inst, args.solver)
    cost = evaluate_cost(inst, sol)
    report = validate_solution(inst, sol)
    if args.out:
        io.save_solution(sol, args.out)
    print(f"ball {cost.ball_cost!r} funnel {cost.funnel_cost!r} total {cost.total!r}")
    if not report.ok:
        for line in report.describe():
            print(line, file=sys.stderr)
        return 1
    return 0


def cmd_validate(args) -> int:
    inst = io.load_instance(args.instance)
    sol = io.load_solution(args.solution)
    report = validate_solution(inst, sol)
    if report.ok:
        print(f"ok total {evaluate_cost(inst, sol).total!r}")
        return 0
    print("infeasible")
    for line in report.describe():
        print(line)
    return 1


def cmd_oracle(args) -> int:
    from anycast.oracle import brute_force_optimal

    inst = io.load_instance(args.instance)
    total = 0.0
    parts = []
    for sub in decompose_demands(inst):
        res = brute_force_optimal(sub.instance)
        parts.append((sub, res.solution))
        total += res.cost
    if args.out:
        from anycast.model import combine_solutions

        io.save_solution(combine_solutions(inst, parts), args.out)
    print(f"optimal total {total!r}")
    return 0


def cmd_reduce(args) -> int:
    from anycast.reduction import build_set_connectivity

    inst = io.load_instance(args.instance)
    dumps = [json.loads(build_set_connectivity(sub.instance).to_json()) for sub in decompose_demands(inst)]
    _emit(json.dumps(dumps if len(dumps) != 1 else dumps[0], indent=1), args.out)
    return 0


def cmd_bench(args) -> int:
    from anycast.bench.runner import run_benchmark

    base = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
    overrides = {
        "distributions": args.distributions,
        "source_sizes": args.sizes,
        "q": args.groups,
        "group_size": args.group_size,
        "trials": args.trials,
        "kappa": args.kappa,
        "seed": args.seed,
        "solvers": args.solvers,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    cfg = BenchConfig(**base)
    result = run_benchmark(cfg, jobs=args.jobs, out_dir=args.out)
    for row in result.summary:
        print(
            f"{row['distribution']:>8} |S|={row['s_size']:<3} {row['solver']:<19} "
            f"rel={row['mean_relative_cost']:.4f} var={row['var_relative_cost']:.2e} "
            f"time={row['mean_runtime_s'] * 1e3:.2f}ms"
        )
    return 1 if result.failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anycast", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=["random", "setcover", "g2s-setcover", "pathological"])
    g.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    g.add_argument("--sources", type=int, default=4)
    g.add_argument("--groups", type=int, default=10)
    g.add_argument("--group-size", type=int, default=10)
    g.add_argument("--trial", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kappa", type=float, default=2.0)
    g.add_argument("--sets", default="1", help='set system, e.g. "1,2;2"')
    g.add_argument("--L", type=float, default=None)
    g.add_argument("--M", type=float, default=None)
    g.add_argument("--q", type=int, default=4)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    s.add_argument("--solver", required=True, choices=list(SOLVERS))
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("validate", help="check a solution")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_validate)

    o = sub.add_parser("oracle", help="exact optimum of a tiny instance")
    o.add_argument("instance")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("reduce", help="dump the set-connectivity instance (sc-dump)")
    r.add_argument("instance")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="run the comparison benchmark")
    b.add_argument("--config", help="BenchConfig as JSON; flags override it")
    b.add_argument("--distributions", nargs="+", choices=DISTRIBUTIONS)
    b.add_argument("--sizes", nargs="+", type=int)
    b.add_argument("--groups", type=int)
    b.add_argument("--group-size", type=int)
    b.add_argument("--trials", type=int)
    b.add_argument("--kappa", type=float)
    b.add_argument("--seed", type=int)
    b.add_argument("--solvers", nargs="+", choices=list(SOLVERS), default=None)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="bench_out")
    b.set_defaults(func=cmd_bench)
    return p


def run_cli(argv=None) -> int:
    level = os.environ.get("ANYCAST_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (AnycastError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
