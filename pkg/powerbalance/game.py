"""
The power allocation game: environment graphs, allocation matrices, support, threat,
states, the sufficient preference conditions and a sampled Nash check.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
import networkx as nx
import numpy as np
import pandas as pd
from powerbalance.arg_validators import check_count
from powerbalance.arg_validators import check_disjoint
from powerbalance.arg_validators import check_index
from powerbalance.arg_validators import check_pairs
from powerbalance.arg_validators import check_powers
from powerbalance.arg_validators import check_square
from powerbalance.number_utils import Number
from powerbalance.number_utils import resolve_tolerance
from powerbalance.number_utils import sign
from powerbalance.settings import NASH_SAMPLES
from powerbalance.settings import TOLERANCE

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class State(str, Enum):
    SAFE = "safe"
    PRECARIOUS = "precarious"
    UNSAFE = "unsafe"


StateVector = Tuple[State, ...]

_HOLDING = (State.SAFE, State.PRECARIOUS)
_FALLING = (State.UNSAFE, State.PRECARIOUS)


@dataclass(frozen=True, eq=False)
class EnvironmentGraph:
    """
    Signed environment graph: countries, their total powers and friend/adversary pairs.

    Pairs are stored as (min, max) tuples sorted lexicographically. Build instances
    with `build_environment`, which validates the invariants.
    """

    powers: np.ndarray
    friend_edges: Tuple[Pair, ...] = ()
    adversary_edges: Tuple[Pair, ...] = ()

    @property
    def n(self) -> int:
        return len(self.powers)

    @cached_property
    def friend_mask(self) -> np.ndarray:
        """n x n boolean matrix, True at (i, j) iff j is in F_i (diagonal included)."""
        mask = np.eye(self.n, dtype=bool)
        _mark_pairs(mask, self.friend_edges)
        mask.flags.writeable = False
        return mask

    @cached_property
    def adversary_mask(self) -> np.ndarray:
        """n x n boolean matrix, True at (i, j) iff j is in A_i."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        _mark_pairs(mask, self.adversary_edges)
        mask.flags.writeable = False
        return mask

    @cached_property
    def has_adversaries(self) -> np.ndarray:
        """Boolean vector, True for countries with A_i nonempty."""
        flags = np.zeros(self.n, dtype=bool)
        if self.adversary_edges:
            flags[np.asarray(self.adversary_edges).ravel()] = True
        flags.flags.writeable = False
        return flags

    def friends(self, i: int) -> FrozenSet[int]:
        """F_i, which contains i itself."""
        check_index(i, self.n)
        return frozenset(np.flatnonzero(self.friend_mask[i]).tolist())

    def adversaries(self, i: int) -> FrozenSet[int]:
        """A_i."""
        check_index(i, self.n)
        return frozenset(np.flatnonzero(self.adversary_mask[i]).tolist())

    def adversary_graph(self) -> nx.Graph:
        """Unsigned adversary subgraph on the countries that have adversaries, nodes in index order."""
        graph = nx.Graph()
        graph.add_nodes_from(np.flatnonzero(self.has_adversaries).tolist())
        graph.add_edges_from(self.adversary_edges)
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnvironmentGraph):
            return NotImplemented
        return (
            self.n == other.n
            and all(a == b for a, b in zip(self.powers, other.powers))
            and self.friend_edges == other.friend_edges
            and self.adversary_edges == other.adversary_edges
        )


def _mark_pairs(mask: np.ndarray, pairs: Sequence[Pair]) -> None:
    if pairs:
        idx = np.asarray(pairs)
        mask[idx[:, 0], idx[:, 1]] = True
        mask[idx[:, 1], idx[:, 0]] = True


def build_environment(
    powers: Iterable,
    friend_edges: Optional[Iterable] = None,
    adversary_edges: Optional[Iterable] = None,
) -> EnvironmentGraph:
    """
    Build and validate an environment graph.

    Parameters
    ----------
    powers (list-like)
            Nonnegative total power of each country.
    friend_edges (list-like)
            Unordered 0-based pairs of friends (R_F).
    adversary_edges (list-like)
            Unordered 0-based pairs of adversaries (R_A).

    Returns
    -------
            EnvironmentGraph
    """
    powers = check_powers(powers)
    powers.flags.writeable = False
    n = len(powers)
    friends = check_pairs(friend_edges, n, "friend")
    adversaries = check_pairs(adversary_edges, n, "adversary")
    check_disjoint(friends, adversaries)
    return EnvironmentGraph(powers=powers, friend_edges=friends, adversary_edges=adversaries)


def allocation_issues(g: EnvironmentGraph, U: np.ndarray, tol: Optional[float] = None) -> List[str]:
    """
    List the reasons `U` is not a power allocation matrix for `g` (empty if it is one).

    Checks nonnegativity, support on F_i and A_i, and row sums equal to p_i.
    """
    issues = []
    tol = resolve_tolerance(tol, U, g.powers)
    negative = np.argwhere(U < -tol)
    if len(negative):
        i, j = negative[0]
        issues.append(f"Negative entry at ({i}, {j}).")
    outside = np.argwhere((U != 0) & ~(g.friend_mask | g.adversary_mask))
    if len(outside):
        i, j = outside[0]
        issues.append(f"Entry at ({i}, {j}) allocates power to a country that is neither friend nor adversary.")
    row_gap = U.sum(axis=1) - g.powers
    for i in np.flatnonzero(np.abs(row_gap) > tol):
        issues.append(f"Row {i} sums to {U[i].sum()} instead of p_{i} = {g.powers[i]}.")
    return issues


def as_allocation(g: EnvironmentGraph, matrix: object, tol: Optional[float] = None) -> np.ndarray:
    """
    Check that `matrix` is a power allocation matrix for `g` and return it read-only.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment the matrix allocates power in.
    matrix (array-like)
            n x n nonnegative matrix with row i summing to p_i.
    tol (float)
            Tolerance for float inputs; exact inputs are compared exactly.

    Returns
    -------
            np.ndarray
    """
    U = check_square(matrix, g.n)
    issues = allocation_issues(g, U, tol)
    if issues:
        raise ValueError(issues[0])
    U = U.copy()
    U.flags.writeable = False
    return U


def supports(g: EnvironmentGraph, U: np.ndarray) -> np.ndarray:
    """Vector of total supports: sigma_i = sum_{j in F_i} u_ji + sum_{j in A_i} u_ij."""
    received = np.where(g.friend_mask, U.T, 0).sum(axis=1)
    aimed = np.where(g.adversary_mask, U, 0).sum(axis=1)
    return received + aimed


def threats(g: EnvironmentGraph, U: np.ndarray) -> np.ndarray:
    """Vector of total threats: tau_i = sum_{j in A_i} u_ji."""
    return np.where(g.adversary_mask, U.T, 0).sum(axis=1)


def total_support(g: EnvironmentGraph, U: np.ndarray, i: int) -> Number:
    """Total support sigma_i(U) of country i."""
    i = check_index(i, g.n)
    return supports(g, U)[i]


def total_threat(g: EnvironmentGraph, U: np.ndarray, i: int) -> Number:
    """Total threat tau_i(U) against country i."""
    i = check_index(i, g.n)
    return threats(g, U)[i]


def _state_of(margin: Number, tol: float) -> State:
    return {1: State.SAFE, 0: State.PRECARIOUS, -1: State.UNSAFE}[sign(margin, tol)]


def state_vector(g: EnvironmentGraph, U: np.ndarray, tol: Optional[float] = None) -> StateVector:
    """
    State of every country under U, from the sign of sigma_i(U) - tau_i(U).

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    U (np.ndarray)
            Power allocation matrix.
    tol (float)
            Width of the precarious band for float inputs; exact inputs use 0.

    Returns
    -------
            Tuple of State, one per country.
    """
    tol = resolve_tolerance(tol, U)
    margins = supports(g, U) - threats(g, U)
    return tuple(_state_of(m, tol) for m in margins)


def weakly_prefers(
    g: EnvironmentGraph, i: int, U: np.ndarray, V: np.ndarray, tol: Optional[float] = None
) -> bool:
    """
    Sufficient condition for country i to weakly prefer V over U.

    Every friend (i included) is safe or precarious under V or unsafe under U, and every
    adversary is unsafe or precarious under V or safe under U.
    """
    x_u, x_v = state_vector(g, U, tol), state_vector(g, V, tol)
    friends_ok = all(x_v[j] in _HOLDING or x_u[j] is State.UNSAFE for j in g.friends(i))
    adversaries_ok = all(x_v[j] in _FALLING or x_u[j] is State.SAFE for j in g.adversaries(i))
    return friends_ok and adversaries_ok


def indifferent(
    g: EnvironmentGraph, i: int, U: np.ndarray, V: np.ndarray, tol: Optional[float] = None
) -> bool:
    """Sufficient condition for indifference: equal states on F_i and A_i."""
    x_u, x_v = state_vector(g, U, tol), state_vector(g, V, tol)
    return all(x_u[j] == x_v[j] for j in g.friends(i) | g.adversaries(i))


def strongly_prefers(
    g: EnvironmentGraph, i: int, U: np.ndarray, V: np.ndarray, tol: Optional[float] = None
) -> bool:
    """Sufficient condition for strong preference: i is unsafe under U and not under V."""
    check_index(i, g.n)
    x_u, x_v = state_vector(g, U, tol), state_vector(g, V, tol)
    return x_u[i] is State.UNSAFE and x_v[i] in _HOLDING


def equilibrium_equivalent(
    g: EnvironmentGraph, U: np.ndarray, V: np.ndarray, tol: Optional[float] = None
) -> bool:
    """True iff U and V induce the same state vector."""
    return state_vector(g, U, tol) == state_vector(g, V, tol)


def equilibrium_classes(
    g: EnvironmentGraph,
    matrices: Sequence[np.ndarray],
    labels: Optional[Sequence[str]] = None,
    tol: Optional[float] = None,
) -> pd.core.frame.DataFrame:
    """
    Group allocation matrices into equilibrium-equivalence classes.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    matrices (list-like)
            Allocation matrices to classify.
    labels (list-like)
            Name of each matrix. Defaults to 'U1', 'U2', ...

    Returns
    -------
            pd.core.frame.DataFrame with columns 'label', 'states' and 'class' (0-based class id,
            numbered in order of first appearance).
    """
    if labels is None:
        labels = [f"U{k + 1}" for k in range(len(matrices))]
    states = [",".join(s.value for s in state_vector(g, U, tol)) for U in matrices]
    df = pd.DataFrame({"label": list(labels), "states": states})
    df["class"] = df.groupby("states", sort=False).ngroup()
    return df


@dataclass(frozen=True, eq=False)
class Deviation:
    """Replacement row for one country: a point of its strategy simplex."""

    country: int
    new_row: np.ndarray

    def apply(self, U: np.ndarray) -> np.ndarray:
        """Copy of U with row `country` replaced."""
        V = np.array(U, dtype=np.result_type(U, self.new_row))
        V[self.country] = self.new_row
        return V


def random_deviation(g: EnvironmentGraph, i: int, rng: np.random.Generator) -> Deviation:
    """Deviation of country i drawn from a symmetric Dirichlet over F_i and A_i."""
    i = check_index(i, g.n)
    columns = np.flatnonzero(g.friend_mask[i] | g.adversary_mask[i])
    row = np.zeros(g.n)
    row[columns] = float(g.powers[i]) * rng.dirichlet(np.ones(len(columns)))
    return Deviation(country=i, new_row=row)


@dataclass(frozen=True)
class NashReport:
    """Outcome of `sampled_nash_check`. `passed` is evidence, not proof."""

    passed: bool
    samples: int
    deviations_drawn: int
    witnesses: Tuple[Deviation, ...] = field(default_factory=tuple)


def sampled_nash_check(
    g: EnvironmentGraph,
    U: np.ndarray,
    samples: int = NASH_SAMPLES,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    max_witnesses: int = 10,
) -> NashReport:
    """
    Look for deviations that a deviating country strongly prefers over U.

    For each country, `samples` replacement rows are drawn uniformly from its strategy
    simplex (restricted to F_i and A_i). A deviation of country i only moves sigma_i
    through u_ii and the entries aimed at A_i, and never moves tau_i, so x_i(V) is
    evaluated from that row alone.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    U (np.ndarray)
            Power allocation matrix to test.
    samples (int)
            Number of random deviations per country.
    seed (int)
            Seed of the numpy random generator.
    tol (float)
            Width of the precarious band for float inputs. Whether a country is unsafe
            under U is decided exactly for exact inputs; sampled rows are always floats.
    max_witnesses (int)
            Number of witness deviations kept in the report.

    Returns
    -------
            NashReport
    """
    samples = check_count(samples, "samples", minimum=1)
    rng = np.random.default_rng(seed)
    margins = supports(g, U) - threats(g, U)
    exact_tol = resolve_tolerance(tol, U, g.powers)
    float_tol = TOLERANCE if tol is None else tol
    U_float = np.asarray(U, dtype=float)
    sigma = supports(g, U_float)
    tau = threats(g, U_float)
    witnesses: List[Deviation] = []
    found = 0
    for i in range(g.n):
        columns = np.flatnonzero(g.friend_mask[i] | g.adversary_mask[i])
        rows = float(g.powers[i]) * rng.dirichlet(np.ones(len(columns)), size=samples)
        if sign(margins[i], exact_tol) >= 0:
            continue
        # entries of row i that count towards sigma_i: u_ii and the adversary columns
        counted = (columns == i) | g.adversary_mask[i, columns]
        own = U_float[i, i] + U_float[i][g.adversary_mask[i]].sum()
        new_sigma = sigma[i] - own + rows[:, counted].sum(axis=1)
        improving = np.flatnonzero(new_sigma - tau[i] >= -float_tol)
        found += len(improving)
        for k in improving[: max(0, max_witnesses - len(witnesses))]:
            row = np.zeros(g.n)
            row[columns] = rows[k]
            witnesses.append(Deviation(country=i, new_row=row))
    logger.debug("sampled Nash check: %d strongly preferred deviations found", found)
    return NashReport(
        passed=found == 0,
        samples=samples,
        deviations_drawn=samples * g.n,
        witnesses=tuple(witnesses),
    )
