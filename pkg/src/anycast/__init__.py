"""Group-to-group anycast network design: balls plus funnel trees."""
from anycast.kernels import BACKEND
from anycast.model import (
    CostBreakdown,
    EuclideanLayout,
    Instance,
    Solution,
    decompose_demands,
    euclidean_weights,
    evaluate_cost,
    metric_completion,
    validate_solution,
)
from anycast.solvers import SOLVERS, solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "SOLVERS",
    "CostBreakdown",
    "EuclideanLayout",
    "Instance",
    "Solution",
    "decompose_demands",
    "euclidean_weights",
    "evaluate_cost",
    "metric_completion",
    "solve",
    "validate_solution",
]
