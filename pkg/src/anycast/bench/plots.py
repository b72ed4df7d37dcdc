"""Grouped bar charts of the benchmark summary (relative cost, log-scale runtime)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _bars(summary, config, key, path, ylabel, log=False, distributions=None):
    distributions = distributions or config.distributions
    fig, axes = plt.subplots(1, len(distributions), figsize=(6 * len(distributions), 4), squeeze=False)
    solvers = list(config.solvers)
    width = 0.8 / len(solvers)
    x = np.arange(len(config.source_sizes))
    for ax, dist in zip(axes[0], distributions):
        for k, solver in enumerate(solvers):
            vals = []
            for s in config.source_sizes:
                row = next(
                    (r for r in summary if r["distribution"] == dist and r["s_size"] == s and r["solver"] == solver),
                    None,
                )
                vals.append(row[key] if row else np.nan)
            ax.bar(x + (k - (len(solvers) - 1) / 2) * width, vals, width, label=solver)
        ax.set_xticks(x, [str(s) for s in config.source_sizes])
        ax.set_xlabel("|S|")
        ax.set_ylabel(ylabel)
        ax.set_title(dist)
        if log:
            ax.set_yscale("log")
    axes[0][0].legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_relative_costs(summary, config, path):
    _bars(summary, config, "mean_relative_cost", path, "cost relative to cover_and_grow")


def plot_runtimes(summary, config, path):
    # runtime does not depend on the point distribution; plot the first one
    _bars(summary, config, "mean_runtime_s", path, "runtime (s)", log=True, distributions=config.distributions[:1])
