"""Experiment runner: every solver on the same random instances, relative to Cover-and-Grow."""
from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from anycast.bench.generators import BenchConfig, gen_random
from anycast.model import evaluate_cost, validate_solution
from anycast.solvers import SOLVERS

log = logging.getLogger(__name__)

REFERENCE = "cover_and_grow"
CSV_COLUMNS = ("solver", "distribution", "s_size", "trial", "cost", "relative_cost", "runtime_ns", "feasible")


@dataclass(frozen=True)
class TrialRecord:
    solver: str
    distribution: str
    s_size: int
    trial: int
    cost: float
    relative_cost: float
    runtime_ns: int
    feasible: bool
    error: str = ""

    def row(self) -> list[str]:
        return [
            self.solver,
            self.distribution,
            str(self.s_size),
            str(self.trial),
            repr(self.cost),
            repr(self.relative_cost),
            str(self.runtime_ns),
            "true" if self.feasible else "false",
        ]


@dataclass
class BenchResult:
    records: list[TrialRecord]
    summary: list[dict]

    @property
    def failures(self) -> list[TrialRecord]:
        return [r for r in self.records if not r.feasible]


def _solver_order(config: BenchConfig) -> list[str]:
    names = [REFERENCE] + [s for s in config.solvers if s != REFERENCE]
    for name in names:
        if name not in SOLVERS:
            raise KeyError(f"unknown solver {name!r}; registered: {', '.join(SOLVERS)}")
    return names


def run_trial(config: BenchConfig, distribution: str, s_size: int, trial: int) -> list[TrialRecord]:
    inst = gen_random(config, trial, s_size=s_size, distribution=distribution)
    raw = []
    for name in _solver_order(config):
        start = time.perf_counter_ns()
        try:
            sol = SOLVERS[name](inst)
        except Exception as exc:  # a failing solver costs one error row, not the run
            elapsed = time.perf_counter_ns() - start
            log.error("%s failed on %s |S|=%d trial %d: %s", name, distribution, s_size, trial, exc)
            raw.append((name, math.nan, elapsed, False, f"{type(exc).__name__}: {exc}"))
            continue
        elapsed = time.perf_counter_ns() - start
        report = validate_solution(inst, sol)
        if not report.ok:
            log.error("%s infeasible on %s |S|=%d trial %d: %s", name, distribution, s_size, trial, report.describe())
        raw.append((name, evaluate_cost(inst, sol).total, elapsed, report.ok, "; ".join(report.describe())))
    ref = raw[0][1]
    out = []
    for name, cost, elapsed, ok, err in raw:
        if name not in config.solvers:
            continue
        if math.isnan(cost) or math.isnan(ref):
            rel = math.nan
        elif ref == 0.0:
            rel = 1.0 if cost == 0.0 else math.inf
        else:
            rel = cost / ref
        if name == REFERENCE:
            rel = 1.0 if not math.isnan(cost) else math.nan
        out.append(TrialRecord(name, distribution, s_size, trial, cost, rel, elapsed, ok, err))
    return out


def _task(args):
    return run_trial(*args)


def summarize(records: list[TrialRecord]) -> list[dict]:
    groups: dict[tuple, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault((r.distribution, r.s_size, r.solver), []).append(r)
    rows = []
    for (dist, s_size, solver), recs in groups.items():
        good = [r for r in recs if r.feasible and math.isfinite(r.relative_cost)]
        rel = [r.relative_cost for r in good]
        mean = math.fsum(rel) / len(rel) if rel else math.nan
        var = math.fsum((x - mean) ** 2 for x in rel) / len(rel) if rel else math.nan
        rows.append(
            {
                "distribution": dist,
                "s_size": s_size,
                "solver": solver,
                "trials": len(recs),
                "failures": len(recs) - len(good),
                "mean_relative_cost": mean,
                "var_relative_cost": var,
                "mean_cost": math.fsum(r.cost for r in good) / len(good) if good else math.nan,
                "mean_runtime_s": sum(r.runtime_ns for r in recs) / len(recs) / 1e9,
            }
        )
    return rows


def run_benchmark(config: BenchConfig, jobs: int = 1, out_dir=None) -> BenchResult:
    _solver_order(config)
    tasks = [
        (config, dist, s_size, trial)
        for dist in config.distributions
        for s_size in config.source_sizes
        for trial in range(config.trials)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        chunks = [_task(t) for t in tasks]
    records = [r for chunk in chunks for r in chunk]
    summary = summarize(records)
    result = BenchResult(records, summary)
    if out_dir is not None:
        write_outputs(result, config, Path(out_dir))
    return result


def write_outputs(result: BenchResult, config: BenchConfig, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "results.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in result.records:
            w.writerow(r.row())
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(result.summary[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(result.summary)
    from anycast.bench.plots import plot_relative_costs, plot_runtimes

    plot_relative_costs(result.summary, config, out / "relative_costs.svg")
    plot_runtimes(result.summary, config, out / "runtimes.svg")
