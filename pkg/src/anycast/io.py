"""JSON interchange for instances and solutions."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from anycast.errors import InvalidInputError
from anycast.model import EuclideanLayout, Instance, Solution, euclidean_weights


def instance_to_dict(inst: Instance) -> dict:
    out: dict = {"nodes": list(range(inst.n))}
    if inst.coords is not None and inst.kappa is not None and inst.is_euclidean:
        out["coords"] = inst.coords.tolist()
        out["kappa"] = inst.kappa
    else:
        out["c"] = inst.c.tolist()
        out["d"] = inst.d.tolist()
    out["source_groups"] = [sorted(g) for g in inst.source_groups]
    out["dest_groups"] = [sorted(g) for g in inst.dest_groups]
    out["demands"] = [list(x) for x in inst.demands]
    return out


def instance_from_dict(data: dict) -> Instance:
    try:
        nodes = list(data["nodes"])
        if nodes != list(range(len(nodes))):
            raise InvalidInputError("nodes must be 0..n-1 in order")
        coords = data.get("coords")
        kappa = data.get("kappa")
        if coords is not None:
            layout = EuclideanLayout(np.asarray(coords, dtype=np.float64), float(kappa if kappa is not None else 2.0))
            c, d = euclidean_weights(layout)
            if "c" in data:
                c = np.asarray(data["c"], dtype=np.float64)
            if "d" in data:
                d = np.asarray(data["d"], dtype=np.float64)
            coords, kappa = layout.coords, layout.kappa
        else:
            c = np.asarray(data["c"], dtype=np.float64)
            d = np.asarray(data["d"], dtype=np.float64)
        if c.shape != (len(nodes), len(nodes)):
            raise InvalidInputError("weight matrices must match the node list")
        return Instance(c, d, data["source_groups"], data["dest_groups"], data["demands"], coords=coords, kappa=kappa)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed instance: {exc}") from exc


def solution_to_dict(sol: Solution) -> dict:
    return {
        "balls": {str(s): c for s, c in sorted(sol.balls.items())},
        "funnel_trees": {str(s): [list(e) for e in edges] for s, edges in sorted(sol.funnel_trees.items())},
        "assignment": {str(k): list(w) for k, w in sorted(sol.assignment.items())},
    }


def solution_from_dict(data: dict) -> Solution:
    try:
        return Solution(
            balls={int(s): float(c) for s, c in data.get("balls", {}).items()},
            funnel_trees={
                int(s): [(int(u), int(v)) for u, v in edges] for s, edges in data.get("funnel_trees", {}).items()
            },
            assignment={int(k): (int(w[0]), int(w[1])) for k, w in data.get("assignment", {}).items()},
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidInputError(f"malformed solution: {exc}") from exc


def load_instance(path) -> Instance:
    return instance_from_dict(json.loads(Path(path).read_text()))


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst)))


def load_solution(path) -> Solution:
    return solution_from_dict(json.loads(Path(path).read_text()))


def save_solution(sol: Solution, path) -> None:
    Path(path).write_text(json.dumps(solution_to_dict(sol), indent=1))
