"""
JSON files: instances, allocation matrices, edge vectors, solutions and lineage logs.

Integral numbers are written as integers, other rationals as "p/q" strings and floats
as floats, so every file reads back to the same values.
"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union
import numpy as np
from powerbalance.arg_validators import check_iterables_samelen
from powerbalance.arg_validators import check_square
from powerbalance.balance import from_edge_vector
from powerbalance.game import EnvironmentGraph
from powerbalance.game import build_environment
from powerbalance.number_utils import array_to_jsonable
from powerbalance.number_utils import as_array
from powerbalance.solvers import Solution

PathLike = Union[str, Path]


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"Cannot parse {path}: {exc}") from exc


def write_json(obj: Any, path: PathLike) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def instance_to_dict(g: EnvironmentGraph) -> Dict[str, Any]:
    return {
        "powers": array_to_jsonable(g.powers),
        "friends": [list(p) for p in g.friend_edges],
        "adversaries": [list(p) for p in g.adversary_edges],
    }


def instance_from_dict(data: Any) -> EnvironmentGraph:
    """
    Build an environment graph from its JSON form.

    Parameters
    ----------
    data (dict)
            {"powers": [...], "friends": [[i, j], ...], "adversaries": [[i, j], ...]} with
            0-based indices. Both pair lists are optional.

    Returns
    -------
            EnvironmentGraph
    """
    if not isinstance(data, dict) or "powers" not in data:
        raise ValueError("Instance should be an object with a 'powers' list.")
    return build_environment(data["powers"], data.get("friends"), data.get("adversaries"))


def load_instance(path: PathLike) -> EnvironmentGraph:
    return instance_from_dict(read_json(path))


def save_instance(g: EnvironmentGraph, path: PathLike) -> None:
    write_json(instance_to_dict(g), path)


def load_allocation(path: PathLike, g: EnvironmentGraph) -> np.ndarray:
    """
    Read {"matrix": [[...]]} (or a bare list of rows) as an n x n matrix for `g`.

    An edge-vector file is accepted too and read as the balanced equilibrium it determines.
    """
    data = read_json(path)
    if isinstance(data, dict) and "v" in data:
        return from_edge_vector(g, edge_vector_from_dict(data, g))
    matrix = data.get("matrix") if isinstance(data, dict) else data
    if matrix is None:
        raise ValueError("Allocation should be an object with a 'matrix' list.")
    return check_square(matrix, g.n)


def save_allocation(U: np.ndarray, path: PathLike) -> None:
    write_json({"matrix": array_to_jsonable(U)}, path)


def edge_vector_to_dict(g: EnvironmentGraph, v: Any) -> Dict[str, Any]:
    check_iterables_samelen(v, g.adversary_edges)
    return {"ordering": [list(p) for p in g.adversary_edges], "v": array_to_jsonable(v)}


def edge_vector_from_dict(data: Any, g: EnvironmentGraph) -> np.ndarray:
    """
    Read an edge vector in its JSON form.

    Parameters
    ----------
    data (dict or list)
            {"ordering": [[i, j], ...], "v": [...]} or a bare list of values. The
            ordering, when given, must list the adversary pairs of `g` in lexicographic
            order.
    g (EnvironmentGraph)
            Instance the vector belongs to.

    Returns
    -------
            np.ndarray with one value per adversary pair.
    """
    v = data.get("v") if isinstance(data, dict) else data
    if not isinstance(v, list):
        raise ValueError("Edge vector should be an object with a 'v' list.")
    ordering = data.get("ordering") if isinstance(data, dict) else None
    if ordering is not None:
        if not isinstance(ordering, list) or [tuple(p) for p in ordering] != list(g.adversary_edges):
            raise ValueError("Edge vector ordering does not match the adversary pairs of the instance.")
    check_iterables_samelen(v, g.adversary_edges)
    return as_array(v) if v else np.zeros(0, dtype=np.int64)


def load_edge_vector(path: PathLike, g: EnvironmentGraph) -> np.ndarray:
    return edge_vector_from_dict(read_json(path), g)


def save_edge_vector(g: EnvironmentGraph, v: Any, path: PathLike) -> None:
    write_json(edge_vector_to_dict(g, v), path)


def solution_to_dict(solution: Solution) -> Dict[str, Any]:
    """{"method", "v", "matrix"}; infeasible solutions carry their witness instead."""
    if solution.feasible:
        return {
            "method": solution.method,
            "v": array_to_jsonable(solution.v),
            "matrix": array_to_jsonable(solution.matrix),
        }
    return {
        "method": solution.method,
        "witness": {key: list(value) for key, value in solution.witness.items()},
    }


def save_solution(solution: Solution, path: PathLike) -> None:
    write_json(solution_to_dict(solution), path)


def write_lineage(records: Iterable[Dict[str, Any]], path: PathLike) -> None:
    """One JSON object per line, keys sorted."""
    lines = [json.dumps(record, sort_keys=True) for record in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_lineage(path: PathLike) -> List[Dict[str, Any]]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"Cannot parse line {number} of {path}: {exc}") from exc
    return records
