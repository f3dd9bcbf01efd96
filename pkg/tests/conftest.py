import numpy as np
import pytest
from powerbalance.game import build_environment


@pytest.fixture
def triangle():
    """Three pairwise adversaries with powers (8, 6, 4)."""
    return build_environment([8, 6, 4], adversary_edges=[(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def U1():
    return np.array([[2, 4, 2], [2, 0, 4], [0, 4, 0]])


@pytest.fixture
def U2():
    return np.array([[0, 4, 4], [5, 0, 1], [4, 0, 0]])


@pytest.fixture
def U3():
    return np.array([[0, 6, 2], [6, 0, 0], [3, 1, 0]])


@pytest.fixture
def U4():
    return np.array([[0, 5, 3], [5, 0, 1], [3, 1, 0]])


@pytest.fixture
def clique4():
    return build_environment(
        [8, 2, 6, 2], adversary_edges=[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    )


@pytest.fixture
def path():
    return build_environment([2, 3, 2], adversary_edges=[(0, 1), (1, 2)])


@pytest.fixture
def star():
    return build_environment([2, 3, 5], adversary_edges=[(0, 2), (1, 2)])


@pytest.fixture
def k22():
    return build_environment([3, 2, 4, 1], adversary_edges=[(0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def cycle5():
    return build_environment([2] * 5, adversary_edges=[(k, (k + 1) % 5) for k in range(5)])
