from fractions import Fraction
import numpy as np
import pytest
from powerbalance.balance import adversary_incidence
from powerbalance.balance import beta
from powerbalance.balance import block_decomposition
from powerbalance.balance import check_balanced
from powerbalance.balance import edge_loads
from powerbalance.balance import from_edge_vector
from powerbalance.balance import has_block_form
from powerbalance.balance import is_balanced
from powerbalance.balance import necessary_condition
from powerbalance.game import State
from powerbalance.game import build_environment
from powerbalance.game import state_vector
from powerbalance.generators import random_instance


def test_adversary_incidence(triangle, path):
    inc = adversary_incidence(triangle)
    assert inc.vertices == (0, 1, 2)
    assert inc.edges == ((0, 1), (0, 2), (1, 2))
    np.testing.assert_array_equal(inc.C, [[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    np.testing.assert_array_equal(inc.pi, [8, 6, 4])

    g = build_environment([5, 1, 2, 3], adversary_edges=[(0, 2), (2, 3)])
    inc = adversary_incidence(g)
    assert (inc.n_a, inc.q) == (3, 2)
    assert inc.vertices == (0, 2, 3)
    np.testing.assert_array_equal(inc.pi, [5, 2, 3])

    inc = adversary_incidence(build_environment([1, 2]))
    assert (inc.n_a, inc.q) == (0, 0)
    assert inc.C.shape == (0, 0)


def test_beta_and_inverse(triangle, U2, U4):
    np.testing.assert_array_equal(beta(triangle, U2), [4, 4, 1])
    np.testing.assert_array_equal(beta(triangle, U4), [5, 3, 1])
    np.testing.assert_array_equal(from_edge_vector(triangle, [5, 3, 1]), U4)

    # adversary-free countries keep their power at home
    g = build_environment([4, 4, 7], friend_edges=[(1, 2)], adversary_edges=[(0, 1)])
    np.testing.assert_array_equal(from_edge_vector(g, [4]), [[0, 4, 0], [4, 0, 0], [0, 0, 7]])
    assert beta(build_environment([1]), np.eye(1, dtype=int)).shape == (0,)

    # exact rationals stay exact
    g = build_environment(["3/2", "3/2"], adversary_edges=[(0, 1)])
    U = from_edge_vector(g, ["3/2"])
    assert U[0, 1] == Fraction(3, 2) and is_balanced(g, U)


def test_from_edge_vector_errors(triangle):
    with pytest.raises(ValueError) as excinfo:
        from_edge_vector(triangle, [5, 3])
    assert str(excinfo.value) == "Edge vector has 2 entries but there are 3 adversary pairs."

    with pytest.raises(ValueError) as excinfo:
        from_edge_vector(triangle, [9, -1, 5])
    assert str(excinfo.value) == "Edge vector should be nonnegative."

    with pytest.raises(ValueError) as excinfo:
        from_edge_vector(triangle, [5, 3, 2])
    assert str(excinfo.value) == "Edge vector does not satisfy Cv = pi at countries [1, 2]."


def test_check_balanced(triangle, U1, U2, U3, U4):
    assert is_balanced(triangle, U4)
    report = check_balanced(triangle, U4)
    assert report and report.first is None

    for U in (U1, U2, U3):
        assert not is_balanced(triangle, U)

    report = check_balanced(triangle, U1)
    assert report.first.condition == "2"
    assert report.first.location == (0,)
    assert report.first.message == "u_00 = 2 but should be 0."

    # U2 fails only the symmetry condition
    report = check_balanced(triangle, U2)
    assert {v.condition for v in report.violations} == {"3"}
    assert [v.location for v in report.violations] == [(0, 1), (1, 2)]

    # not an allocation matrix at all
    report = check_balanced(triangle, [[0, 5, 3], [5, 0, 1], [3, 1, 1]])
    assert report.first.condition == "valid"
    assert report.first.message == "Row 2 sums to 5 instead of p_2 = 4."
    assert check_balanced(triangle, [[0, 5], [5, 0]]).first.message == "Allocation matrix should be 3 x 3."

    nan = float("nan")
    report = check_balanced(triangle, [[0, nan, nan], [nan, 0, nan], [nan, nan, 0]])
    assert not report
    assert report.first.condition == "valid"
    assert report.first.message == "Numbers should be finite."


def test_condition_one():
    g = build_environment([3, 2, 2], adversary_edges=[(1, 2)])
    assert is_balanced(g, [[3, 0, 0], [0, 0, 2], [0, 2, 0]])

    g = build_environment([3, 2, 2, 1], friend_edges=[(0, 3)], adversary_edges=[(1, 2)])
    report = check_balanced(g, [[2, 0, 0, 1], [0, 0, 2, 0], [0, 2, 0, 0], [0, 0, 0, 1]])
    assert report.first.condition == "1"
    assert report.first.location == (0,)


def test_balanced_with_float_input(triangle, U4):
    U = U4.astype(float)
    U[0, 1] += 1e-12
    U[0, 2] -= 1e-12
    assert is_balanced(triangle, U)
    assert not is_balanced(triangle, U, tol=1e-15)


def test_necessary_condition(triangle, path):
    assert necessary_condition(triangle).holds
    assert necessary_condition(path).holds
    check = necessary_condition(build_environment([10, 2, 3], adversary_edges=[(0, 1), (0, 2), (1, 2)]))
    assert not check.holds
    assert check.violators == (0,)
    check = necessary_condition(build_environment([2, 1], adversary_edges=[(0, 1)]))
    assert check.violators == (0,)


def test_block_form(triangle, U4):
    g = build_environment([3, 2, 2], adversary_edges=[(1, 2)])
    U = np.array([[3, 0, 0], [0, 0, 2], [0, 2, 0]])
    order, D = block_decomposition(g, U)
    assert order == (1, 2, 0)
    np.testing.assert_array_equal(D, [[0, 2, 0], [2, 0, 0], [0, 0, 3]])
    assert has_block_form(g, U)
    assert has_block_form(triangle, U4)


def test_block_form_agrees_with_balance():
    # on allocations that put nothing on friends the two characterizations coincide
    for seed in range(40):
        g = random_instance(5, 0.7, power_range=(0, 4), seed=seed)
        rng = np.random.default_rng(seed)
        for _ in range(5):
            U = np.zeros((g.n, g.n), dtype=np.int64)
            for i in range(g.n):
                columns = np.flatnonzero(np.asarray(g.adversary_mask[i]))
                columns = np.append(columns, i)
                U[i, columns] = rng.multinomial(int(g.powers[i]), np.ones(len(columns)) / len(columns))
            assert has_block_form(g, U) == is_balanced(g, U)


def _with_edge_vector(seed):
    """Random game whose adversary countries get exactly the powers a random v loads on them."""
    rng = np.random.default_rng(seed)
    g = random_instance(6, 0.6, power_range=(0, 5), seed=seed)
    v = rng.integers(0, 6, size=len(g.adversary_edges))
    powers = np.where(g.has_adversaries, edge_loads(g.n, g.adversary_edges, v), g.powers)
    return build_environment(powers, g.friend_edges, g.adversary_edges), v


def test_edge_vector_round_trip():
    for seed in range(100):
        g, v = _with_edge_vector(seed)
        U = from_edge_vector(g, v)
        np.testing.assert_array_equal(beta(g, U), v)
        assert is_balanced(g, U)


def test_balanced_states():
    # countries with adversaries end up precarious, powered adversary-free ones safe
    for seed in range(100):
        g, v = _with_edge_vector(seed)
        states = state_vector(g, from_edge_vector(g, v))
        for i, state in enumerate(states):
            if g.has_adversaries[i]:
                assert state is State.PRECARIOUS
            elif g.powers[i] > 0:
                assert state is State.SAFE


def test_balance_matches_incidence_system():
    def in_standard_form(g, U):
        inc = adversary_incidence(g)
        v = beta(g, U)
        return has_block_form(g, U) and np.array_equal(inc.C @ v, inc.pi) and bool(np.all(v >= 0))

    balanced_seen = unbalanced_seen = 0
    for seed in range(60):
        g, v = _with_edge_vector(seed)
        rng = np.random.default_rng(seed)
        candidates = [from_edge_vector(g, v)]
        for _ in range(5):
            U = np.zeros((g.n, g.n), dtype=np.int64)
            for i in range(g.n):
                columns = np.append(np.flatnonzero(np.asarray(g.adversary_mask[i])), i)
                U[i, columns] = rng.multinomial(int(g.powers[i]), np.ones(len(columns)) / len(columns))
            candidates.append(U)
        for U in candidates:
            balanced = is_balanced(g, U)
            assert balanced == in_standard_form(g, U)
            balanced_seen += balanced
            unbalanced_seen += not balanced
    assert balanced_seen >= 60 and unbalanced_seen > 0
