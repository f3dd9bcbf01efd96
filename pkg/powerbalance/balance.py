"""
Balanced equilibria: the adversary incidence system (C, pi), the map beta and its
inverse, the three balance conditions and the necessary power condition.
"""
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional, Tuple
import numpy as np
from powerbalance.arg_validators import check_square
from powerbalance.game import EnvironmentGraph
from powerbalance.game import allocation_issues
from powerbalance.number_utils import as_array
from powerbalance.number_utils import resolve_tolerance

Pair = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class AdversaryIncidence:
    """
    Incidence system of the adversary subgraph.

    `vertices` are the countries with adversaries in index order, `edges` the adversary
    pairs in lexicographic order, `C` the n_a x q 0/1 incidence matrix and `pi` the
    powers of `vertices`.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Pair, ...]
    C: np.ndarray
    pi: np.ndarray

    @property
    def n_a(self) -> int:
        return len(self.vertices)

    @property
    def q(self) -> int:
        return len(self.edges)


class ConditionCheck(NamedTuple):
    """Verdict of a power condition and the countries that violate it."""

    holds: bool
    violators: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Violation:
    condition: str
    location: Tuple[int, ...]
    message: str


@dataclass(frozen=True)
class BalanceReport:
    """Structured diagnostic of the balance conditions. Truthy iff balanced."""

    balanced: bool
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.balanced

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


def adversary_incidence(g: EnvironmentGraph) -> AdversaryIncidence:
    """
    Build the incidence system (C, pi) of the adversary subgraph of `g`.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph. R_A may be empty, giving n_a = q = 0.

    Returns
    -------
            AdversaryIncidence
    """
    vertices = tuple(np.flatnonzero(g.has_adversaries).tolist())
    position = {country: row for row, country in enumerate(vertices)}
    C = np.zeros((len(vertices), len(g.adversary_edges)), dtype=np.int64)
    for k, (i, j) in enumerate(g.adversary_edges):
        C[position[i], k] = 1
        C[position[j], k] = 1
    pi = g.powers[list(vertices)] if vertices else g.powers[:0]
    return AdversaryIncidence(vertices=vertices, edges=g.adversary_edges, C=C, pi=pi)


def edge_loads(n: int, edges: Any, v: np.ndarray) -> np.ndarray:
    """Per-country sum of the values on incident edges, i.e. C v spread over all n countries."""
    loads = np.zeros(n, dtype=v.dtype if v.dtype != object else object)
    if loads.dtype == object:
        for (i, j), value in zip(edges, v):
            loads[i] += value
            loads[j] += value
    elif len(v):
        idx = np.asarray(edges)
        np.add.at(loads, idx[:, 0], v)
        np.add.at(loads, idx[:, 1], v)
    return loads


def beta(g: EnvironmentGraph, U: np.ndarray) -> np.ndarray:
    """Edge vector v with v_k = u_{i_k j_k} in the lexicographic edge ordering."""
    U = np.asarray(U)
    if not g.adversary_edges:
        return np.zeros(0, dtype=U.dtype)
    idx = np.asarray(g.adversary_edges)
    return U[idx[:, 0], idx[:, 1]]


def from_edge_vector(g: EnvironmentGraph, v: Any, tol: Optional[float] = None) -> np.ndarray:
    """
    Build the balanced equilibrium determined by an edge vector.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    v (list-like)
            Nonnegative values, one per adversary pair in lexicographic order, with C v = pi.
    tol (float)
            Tolerance for float inputs; exact inputs are compared exactly.

    Returns
    -------
            np.ndarray: u_ij = u_ji = v_k on adversary pairs, u_ii = p_i for adversary-free
            countries, zero elsewhere.
    """
    v = as_array(list(v) if not isinstance(v, np.ndarray) else v)
    if len(v) != len(g.adversary_edges):
        raise ValueError(
            f"Edge vector has {len(v)} entries but there are {len(g.adversary_edges)} adversary pairs."
        )
    tol = resolve_tolerance(tol, v, g.powers)
    if np.any(v < -tol):
        raise ValueError("Edge vector should be nonnegative.")
    loads = edge_loads(g.n, g.adversary_edges, v)
    gap = np.flatnonzero(g.has_adversaries & (np.abs(loads - g.powers) > tol))
    if len(gap):
        raise ValueError(f"Edge vector does not satisfy Cv = pi at countries {gap.tolist()}.")
    U = np.zeros((g.n, g.n), dtype=np.result_type(v, g.powers))
    if len(v):
        idx = np.asarray(g.adversary_edges)
        U[idx[:, 0], idx[:, 1]] = v
        U[idx[:, 1], idx[:, 0]] = v
    free = np.flatnonzero(~g.has_adversaries)
    U[free, free] = g.powers[free]
    return U


def check_balanced(g: EnvironmentGraph, U: Any, tol: Optional[float] = None) -> BalanceReport:
    """
    Check the three balanced-equilibrium conditions and report every violation.

    Conditions
    ----------
    1   u_ii = p_i for every country without adversaries.
    2   u_ii = 0 and sum_{j in A_i} u_ij = p_i for every country with adversaries.
    3   u_ij = u_ji on every adversary pair.

    A matrix that is not a power allocation matrix for `g` fails with condition 'valid'.

    Returns
    -------
            BalanceReport
    """
    try:
        U = check_square(U, g.n)
    except (TypeError, ValueError) as exc:
        return BalanceReport(False, (Violation("valid", (), str(exc)),))
    tol = resolve_tolerance(tol, U, g.powers)
    issues = allocation_issues(g, U, tol)
    if issues:
        return BalanceReport(False, tuple(Violation("valid", (), msg) for msg in issues))

    violations = []
    diagonal = np.diagonal(U)
    aimed = np.where(g.adversary_mask, U, 0).sum(axis=1)
    for i in range(g.n):
        if not g.has_adversaries[i]:
            if abs(diagonal[i] - g.powers[i]) > tol:
                violations.append(
                    Violation("1", (i,), f"u_{i}{i} = {diagonal[i]} but p_{i} = {g.powers[i]}.")
                )
        elif abs(diagonal[i]) > tol:
            violations.append(Violation("2", (i,), f"u_{i}{i} = {diagonal[i]} but should be 0."))
        elif abs(aimed[i] - g.powers[i]) > tol:
            violations.append(
                Violation("2", (i,), f"Power aimed at adversaries is {aimed[i]}, not p_{i} = {g.powers[i]}.")
            )
    for i, j in g.adversary_edges:
        if abs(U[i, j] - U[j, i]) > tol:
            violations.append(Violation("3", (i, j), f"u_{i}{j} = {U[i, j]} but u_{j}{i} = {U[j, i]}."))
    violations.sort(key=lambda v: v.condition)
    return BalanceReport(not violations, tuple(violations))


def is_balanced(g: EnvironmentGraph, U: Any, tol: Optional[float] = None) -> bool:
    """True iff U is a balanced equilibrium of the game on `g`."""
    return check_balanced(g, U, tol).balanced


def necessary_condition(g: EnvironmentGraph, tol: Optional[float] = None) -> ConditionCheck:
    """
    Necessary power condition: sum_{j in A_i} p_j >= p_i for every country with adversaries.

    Returns
    -------
            ConditionCheck with the violating countries in index order.
    """
    tol = resolve_tolerance(tol, g.powers)
    adversary_power = np.where(g.adversary_mask, g.powers[None, :], 0).sum(axis=1)
    short = g.has_adversaries & (adversary_power - g.powers < -tol)
    violators = tuple(np.flatnonzero(short).tolist())
    return ConditionCheck(not violators, violators)


def block_decomposition(g: EnvironmentGraph, U: Any) -> Tuple[Tuple[int, ...], np.ndarray]:
    """
    Reorder U so that countries with adversaries come first.

    Returns
    -------
            (order, D) with D = P'UP, where P is the permutation listing `order`.
    """
    U = check_square(U, g.n)
    order = tuple(np.flatnonzero(g.has_adversaries).tolist()) + tuple(
        np.flatnonzero(~g.has_adversaries).tolist()
    )
    D = U[np.ix_(order, order)] if order else U
    return order, D


def has_block_form(g: EnvironmentGraph, U: Any, tol: Optional[float] = None) -> bool:
    """
    True iff P'UP is block diagonal {D1, D2} with D1 symmetric with zero diagonal and D2
    the diagonal matrix of the powers of the adversary-free countries.
    """
    order, D = block_decomposition(g, U)
    tol = resolve_tolerance(tol, D, g.powers)
    n_a = int(g.has_adversaries.sum())
    D1, D2 = D[:n_a, :n_a], D[n_a:, n_a:]
    free_powers = g.powers[list(order[n_a:])] if n_a < g.n else g.powers[:0]
    checks = (
        np.all(np.abs(D1 - D1.T) <= tol),
        np.all(np.abs(np.diagonal(D1)) <= tol),
        np.all(np.abs(D[:n_a, n_a:]) <= tol),
        np.all(np.abs(D[n_a:, :n_a]) <= tol),
        np.all(np.abs(D2 - np.diag(free_powers)) <= tol),
    )
    return all(bool(c) for c in checks)
