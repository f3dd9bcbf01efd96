"""
Existence and construction of balanced equilibria.

Three routes: the peeling constructor for complete adversary graphs, the max-flow
reduction for bipartite adversary graphs and phase-one LP feasibility for anything else.
`solve` picks the route and re-verifies whatever it returns.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple
import networkx as nx
import numpy as np
from powerbalance.arg_validators import check_count
from powerbalance.balance import ConditionCheck
from powerbalance.balance import adversary_incidence
from powerbalance.balance import beta
from powerbalance.balance import from_edge_vector
from powerbalance.balance import is_balanced
from powerbalance.balance import necessary_condition
from powerbalance.exceptions import EnumerationCapError
from powerbalance.exceptions import NumericalFailure
from powerbalance.exceptions import SolverMismatchError
from powerbalance.flow import FlowResult
from powerbalance.flow import build_flow_network
from powerbalance.flow import max_flow
from powerbalance.game import EnvironmentGraph
from powerbalance.number_utils import Number
from powerbalance.number_utils import as_array
from powerbalance.number_utils import halve
from powerbalance.number_utils import resolve_tolerance
from powerbalance.number_utils import to_number
from powerbalance.settings import SUBSET_CAP
from powerbalance.simplex import lp_feasibility

logger = logging.getLogger(__name__)

METHODS = ("auto", "lp", "complete", "flow")


@dataclass(frozen=True)
class PeelStep:
    """One reduction of the peeling constructor: `amount` placed on (strong, weak)."""

    strong: int
    weak: int
    amount: Number


@dataclass(frozen=True)
class Bipartition:
    left: Tuple[int, ...]
    right: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Solution:
    """
    Outcome of `solve`.

    `matrix` and `v` are None when no balanced equilibrium exists. `witness` then maps
    a diagnostic name ('violators', 'subset', 'unsaturated_source', 'unsaturated_sink')
    to the countries involved.
    """

    method: str
    matrix: Optional[np.ndarray] = None
    v: Optional[np.ndarray] = None
    witness: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.matrix is not None


def three_player_closed_form(
    p1: Number, p2: Number, p3: Number, tol: Optional[float] = None
) -> Optional[np.ndarray]:
    """
    Unique edge vector of a three-country adversary triangle.

    Returns
    -------
            np.ndarray (v_12, v_13, v_23), or None when one power exceeds the sum of the
            other two.
    """
    p1, p2, p3 = (to_number(p) for p in (p1, p2, p3))
    tol = resolve_tolerance(tol, p1, p2, p3)
    v = [halve(p1 + p2 - p3), halve(p1 + p3 - p2), halve(p2 + p3 - p1)]
    if any(x < -tol for x in v):
        return None
    return as_array([x if x >= 0 else 0.0 for x in v])


def peeling_sequence(powers: Sequence[Number]) -> List[PeelStep]:
    """
    Reductions the complete-clique constructor performs before its three-country base.

    Each step pairs the currently strongest country (ties to the lowest index) with the
    currently weakest (ties to the highest index), places the weakest's remaining power
    on that pair and removes it. Indices refer to positions in `powers`.
    """
    remaining = {k: to_number(p) for k, p in enumerate(powers)}
    steps = []
    while len(remaining) > 3:
        order = sorted(remaining, key=lambda k: (-remaining[k], k))
        strong, weak = order[0], order[-1]
        amount = remaining.pop(weak)
        remaining[strong] -= amount
        steps.append(PeelStep(strong=strong, weak=weak, amount=amount))
    return steps


def is_complete_adversary_graph(g: EnvironmentGraph) -> bool:
    """True iff the countries with adversaries are pairwise adversaries."""
    n_a = int(g.has_adversaries.sum())
    return len(g.adversary_edges) == n_a * (n_a - 1) // 2


def solve_complete(g: EnvironmentGraph, tol: Optional[float] = None) -> Optional[np.ndarray]:
    """
    Balanced equilibrium of a game whose adversary graph is a clique.

    Such a game has one iff the necessary power condition holds. The equilibrium is built
    by peeling the clique down to three countries and closing with the three-country
    formula.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph with a complete adversary graph on its n_a countries.
    tol (float)
            Tolerance for float powers.

    Returns
    -------
            np.ndarray allocation matrix, or None if the necessary condition fails.
    """
    if not is_complete_adversary_graph(g):
        raise SolverMismatchError("Adversary graph is not a complete graph.")
    if not necessary_condition(g, tol).holds:
        logger.debug("complete solver: necessary condition fails")
        return None
    vertices = [int(i) for i in np.flatnonzero(g.has_adversaries)]
    powers = [to_number(g.powers[i]) for i in vertices]
    values: Dict[Tuple[int, int], Number] = {}
    if len(vertices) == 2:
        values[(vertices[0], vertices[1])] = powers[0]
    elif len(vertices) >= 3:
        steps = peeling_sequence(powers)
        remaining = dict(enumerate(powers))
        for step in steps:
            a, b = sorted((vertices[step.strong], vertices[step.weak]))
            values[(a, b)] = step.amount
            remaining[step.strong] -= step.amount
            del remaining[step.weak]
        base = sorted(remaining)
        closed = three_player_closed_form(*(remaining[k] for k in base), tol=tol)
        if closed is None:
            raise NumericalFailure("Peeling left a three-country clique without a solution.")
        x, y, z = (vertices[k] for k in base)
        values.update({(x, y): closed[0], (x, z): closed[1], (y, z): closed[2]})
        logger.debug("complete solver: %d peeling steps", len(steps))
    v = [values.get(edge, 0) for edge in g.adversary_edges]
    return from_edge_vector(g, v, tol)


def bipartition(g: EnvironmentGraph) -> Optional[Bipartition]:
    """
    Two-coloring of the adversary subgraph, or None if it has an odd cycle.

    Components are colored by breadth-first search from their lowest-index country, which
    goes to `left`.
    """
    H = g.adversary_graph()
    color: Dict[int, int] = {}
    for component in sorted(nx.connected_components(H), key=min):
        root = min(component)
        color[root] = 0
        for u, v in nx.bfs_edges(H, root):
            color[v] = 1 - color[u]
    if any(color[i] == color[j] for i, j in g.adversary_edges):
        return None
    left = tuple(sorted(i for i, c in color.items() if c == 0))
    right = tuple(sorted(i for i, c in color.items() if c == 1))
    return Bipartition(left=left, right=right)


def _check_bipartition(g: EnvironmentGraph, b: Bipartition) -> None:
    left, right = set(b.left), set(b.right)
    for i, j in g.adversary_edges:
        if not ((i in left and j in right) or (i in right and j in left)):
            raise ValueError(f"Bipartition does not separate adversary pair ({i}, {j}).")


def _check_cap(sides: Sequence[Sequence[int]], cap: int) -> None:
    for side in sides:
        if len(side) > cap:
            raise EnumerationCapError(
                f"Side with {len(side)} countries exceeds the subset enumeration cap of {cap}."
            )


def _first_violation(
    side: Sequence[int],
    weight: Dict[int, Number],
    tol: float,
    neighbors,
) -> Optional[Tuple[int, ...]]:
    """Smallest subset S of `side` (lexicographic within a size) with w(gamma(S)) < w(S)."""
    adjacent = {i: neighbors(i) for i in side}
    for size in range(1, len(side) + 1):
        for subset in combinations(side, size):
            gamma = set().union(*(adjacent[i] for i in subset))
            if sum(weight[j] for j in gamma) - sum(weight[i] for i in subset) < -tol:
                return subset
    return None


def extended_power_condition(
    g: EnvironmentGraph,
    b: Bipartition,
    cap: int = SUBSET_CAP,
    tol: Optional[float] = None,
) -> ConditionCheck:
    """
    Check that every subset S of either side is outweighed by its adversary neighborhood.

    Enumerates 2^|left| + 2^|right| subsets by increasing size.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    b (Bipartition)
            Bipartition of the adversary subgraph.
    cap (int)
            Largest side the enumeration accepts.
    tol (float)
            Tolerance for float powers.

    Returns
    -------
            ConditionCheck whose `violators` is a minimal violating subset on failure.
    """
    cap = check_count(cap, "cap")
    _check_bipartition(g, b)
    _check_cap((b.left, b.right), cap)
    tol = resolve_tolerance(tol, g.powers)
    weight = {i: to_number(p) for i, p in enumerate(g.powers)}
    for side in (b.left, b.right):
        subset = _first_violation(side, weight, tol, g.adversaries)
        if subset is not None:
            return ConditionCheck(False, subset)
    return ConditionCheck(True)


def hall_condition(g: EnvironmentGraph, b: Bipartition, cap: int = SUBSET_CAP) -> ConditionCheck:
    """Hall's condition |gamma(S)| >= |S| for every S within `b.left`."""
    cap = check_count(cap, "cap")
    _check_bipartition(g, b)
    _check_cap((b.left,), cap)
    subset = _first_violation(b.left, dict.fromkeys(range(g.n), 1), 0, g.adversaries)
    return ConditionCheck(subset is None, subset or ())


def matching_saturates(g: EnvironmentGraph, b: Bipartition) -> bool:
    """True iff a maximum matching of the adversary subgraph covers every country of `b.left`."""
    _check_bipartition(g, b)
    H = nx.Graph()
    H.add_nodes_from(b.left + b.right)
    H.add_edges_from(g.adversary_edges)
    matching = nx.bipartite.maximum_matching(H, top_nodes=b.left)
    return all(i in matching for i in b.left)


def flow_certificate(
    g: EnvironmentGraph, b: Bipartition, tol: Optional[float] = None
) -> Tuple[Optional[np.ndarray], FlowResult]:
    """
    Run the max-flow reduction.

    Returns
    -------
            (v, result): the edge vector read off the middle arcs if every source and sink
            arc is saturated (else None), and the FlowResult.
    """
    _check_bipartition(g, b)
    net = build_flow_network(g, b.left, b.right)
    result = max_flow(net, tol)
    if not result.saturated:
        return None, result
    left = set(b.left)
    v = [
        result.flows[(i, j) if i in left else (j, i)] for i, j in g.adversary_edges
    ]
    v = as_array(v) if v else np.zeros(0, dtype=g.powers.dtype)
    return v, result


def solve_bipartite(
    g: EnvironmentGraph, b: Optional[Bipartition] = None, tol: Optional[float] = None
) -> Optional[np.ndarray]:
    """
    Balanced equilibrium of a game whose adversary graph is bipartite.

    Returns
    -------
            np.ndarray allocation matrix, or None when the maximum flow leaves a source or
            sink arc unsaturated.
    """
    if b is None:
        b = bipartition(g)
        if b is None:
            raise SolverMismatchError("Adversary graph is not bipartite.")
    v, _ = flow_certificate(g, b, tol)
    return None if v is None else from_edge_vector(g, v, tol)


def _solve_flow(g, tol, cap) -> Solution:
    b = bipartition(g)
    if b is None:
        raise SolverMismatchError("Adversary graph is not bipartite.")
    v, result = flow_certificate(g, b, tol)
    if v is not None:
        return Solution("bipartite-flow", from_edge_vector(g, v, tol), v)
    witness = {
        "unsaturated_source": result.unsaturated_source,
        "unsaturated_sink": result.unsaturated_sink,
    }
    if max(len(b.left), len(b.right)) <= cap:
        check = extended_power_condition(g, b, cap=cap, tol=tol)
        if not check.holds:
            witness["subset"] = check.violators
    return Solution("bipartite-flow", witness=witness)


def _solve_complete(g, tol) -> Solution:
    U = solve_complete(g, tol)
    if U is None:
        return Solution("complete", witness={"violators": necessary_condition(g, tol).violators})
    return Solution("complete", U, beta(g, U))


def _solve_lp(g, tol) -> Solution:
    v = lp_feasibility(adversary_incidence(g), tol)
    if v is None:
        return Solution("lp", witness={"violators": necessary_condition(g, tol).violators})
    return Solution("lp", from_edge_vector(g, v, tol), v)


def solve(
    g: EnvironmentGraph,
    method: str = "auto",
    tol: Optional[float] = None,
    cap: int = SUBSET_CAP,
) -> Solution:
    """
    Decide whether a balanced equilibrium exists and construct one.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    method (str)
            'auto' picks 'complete' for clique adversary graphs, 'flow' for bipartite ones
            and 'lp' otherwise. A forced method that does not apply raises
            SolverMismatchError.
    tol (float)
            Tolerance for float inputs.
    cap (int)
            Subset enumeration cap for the infeasibility witness of the flow route.

    Returns
    -------
            Solution tagged 'complete', 'bipartite-flow' or 'lp'.
    """
    if method not in METHODS:
        raise ValueError(f"Method should be one of {', '.join(METHODS)}.")
    if method == "auto":
        if is_complete_adversary_graph(g):
            method = "complete"
        elif bipartition(g) is not None:
            method = "flow"
        else:
            method = "lp"
    logger.debug("solving %d countries with method %s", g.n, method)
    if method == "complete":
        solution = _solve_complete(g, tol)
    elif method == "flow":
        solution = _solve_flow(g, tol, cap)
    else:
        solution = _solve_lp(g, tol)
    if solution.feasible and not is_balanced(g, solution.matrix, tol):
        raise NumericalFailure(f"Solution from method '{solution.method}' failed the balance re-check.")
    return solution
