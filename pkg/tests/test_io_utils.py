from fractions import Fraction
import json
import numpy as np
import pytest
from powerbalance.game import build_environment
from powerbalance.io_utils import dumps
from powerbalance.io_utils import instance_from_dict
from powerbalance.io_utils import instance_to_dict
from powerbalance.io_utils import load_allocation
from powerbalance.io_utils import load_edge_vector
from powerbalance.io_utils import load_instance
from powerbalance.io_utils import read_json
from powerbalance.io_utils import read_lineage
from powerbalance.io_utils import save_allocation
from powerbalance.io_utils import save_edge_vector
from powerbalance.io_utils import save_instance
from powerbalance.io_utils import solution_to_dict
from powerbalance.solvers import solve


def test_instance_files(tmp_path, triangle):
    path = tmp_path / "triangle.json"
    save_instance(triangle, path)
    assert json.loads(path.read_text()) == {
        "powers": [8, 6, 4],
        "friends": [],
        "adversaries": [[0, 1], [0, 2], [1, 2]],
    }
    assert load_instance(path) == triangle

    # rationals are written as "p/q" strings
    g = build_environment(["3/2", 1, 0.5], friend_edges=[(0, 1)])
    assert instance_to_dict(g)["powers"] == [1.5, 1.0, 0.5]
    g = build_environment(["3/2", 1], adversary_edges=[(1, 0)])
    assert instance_to_dict(g)["powers"] == ["3/2", 1]
    assert instance_from_dict(instance_to_dict(g)).powers[0] == Fraction(3, 2)


def test_instance_errors(tmp_path):
    with pytest.raises(ValueError) as excinfo:
        instance_from_dict([1, 2, 3])
    assert str(excinfo.value) == "Instance should be an object with a 'powers' list."

    path = tmp_path / "broken.json"
    path.write_text("{'powers': [1, 2]")
    with pytest.raises(ValueError) as excinfo:
        read_json(path)
    assert str(excinfo.value).startswith(f"Cannot parse {path}:")

    with pytest.raises(FileNotFoundError):
        load_instance(tmp_path / "missing.json")

    path.write_text('{"powers": [1, 2], "adversaries": [[0, 0]]}')
    with pytest.raises(ValueError) as excinfo:
        load_instance(path)
    assert str(excinfo.value) == "Self-loop at country 0 is not allowed."


def test_allocation_files(tmp_path, triangle, U4):
    path = tmp_path / "U4.json"
    save_allocation(U4, path)
    assert json.loads(path.read_text()) == {"matrix": U4.tolist()}
    np.testing.assert_array_equal(load_allocation(path, triangle), U4)

    # a bare list of rows is accepted too
    path.write_text(json.dumps(U4.tolist()))
    np.testing.assert_array_equal(load_allocation(path, triangle), U4)

    path.write_text('{"rows": []}')
    with pytest.raises(ValueError) as excinfo:
        load_allocation(path, triangle)
    assert str(excinfo.value) == "Allocation should be an object with a 'matrix' list."

    path.write_text('{"matrix": [[0, 8], [6, 0]]}')
    with pytest.raises(ValueError) as excinfo:
        load_allocation(path, triangle)
    assert str(excinfo.value) == "Allocation matrix should be 3 x 3."


def test_edge_vector_files(tmp_path, triangle, U4):
    path = tmp_path / "v.json"
    save_edge_vector(triangle, [5, 3, 1], path)
    assert json.loads(path.read_text()) == {"ordering": [[0, 1], [0, 2], [1, 2]], "v": [5, 3, 1]}
    assert load_edge_vector(path, triangle).tolist() == [5, 3, 1]
    # allocation readers take the balanced equilibrium the vector determines
    np.testing.assert_array_equal(load_allocation(path, triangle), U4)

    path.write_text('{"v": [5, 3, "1/2"]}')
    assert load_edge_vector(path, triangle).tolist() == [5, 3, Fraction(1, 2)]

    path.write_text("[5, 3]")
    with pytest.raises(ValueError) as excinfo:
        load_edge_vector(path, triangle)
    assert str(excinfo.value) == "Iterables not of the same length."

    path.write_text('{"ordering": [[0, 1], [1, 2], [0, 2]], "v": [5, 1, 3]}')
    with pytest.raises(ValueError) as excinfo:
        load_edge_vector(path, triangle)
    assert str(excinfo.value) == "Edge vector ordering does not match the adversary pairs of the instance."

    path.write_text('{"ordering": [[0, 1]], "values": [5]}')
    with pytest.raises(ValueError) as excinfo:
        load_edge_vector(path, triangle)
    assert str(excinfo.value) == "Edge vector should be an object with a 'v' list."


def test_solution_to_dict(triangle, path):
    assert solution_to_dict(solve(triangle)) == {
        "method": "complete",
        "v": [5, 3, 1],
        "matrix": [[0, 5, 3], [5, 0, 1], [3, 1, 0]],
    }
    data = solution_to_dict(solve(path))
    assert data["method"] == "bipartite-flow"
    assert data["witness"]["subset"] == [0, 2]


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_read_lineage_errors(tmp_path):
    path = tmp_path / "lineage.jsonl"
    path.write_text('{"op": "base"}\n\n{"op": \n')
    with pytest.raises(ValueError) as excinfo:
        read_lineage(path)
    assert str(excinfo.value).startswith(f"Cannot parse line 3 of {path}:")
