"""
Instances with known balanced equilibria, grown by construction steps that preserve
balance, and plain random instances for oracle tests.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, Iterable, Optional, Tuple
import numpy as np
from powerbalance.arg_validators import check_count
from powerbalance.arg_validators import check_index
from powerbalance.arg_validators import check_probability
from powerbalance.arg_validators import check_range
from powerbalance.arg_validators import check_square
from powerbalance.balance import beta
from powerbalance.balance import check_balanced
from powerbalance.balance import from_edge_vector
from powerbalance.exceptions import InvalidConstructionError
from powerbalance.game import EnvironmentGraph
from powerbalance.game import build_environment
from powerbalance.number_utils import array_to_jsonable
from powerbalance.number_utils import resolve_tolerance
from powerbalance.number_utils import to_jsonable
from powerbalance.number_utils import to_number
from powerbalance.settings import ADD_NODE_PROBABILITY
from powerbalance.settings import BASE_POWER_RANGE
from powerbalance.settings import MAX_DELTA
from powerbalance.settings import POWER_RANGE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SeedBundle:
    """
    A game together with one of its balanced equilibria and the steps that built it.

    The equilibrium is stored as its edge vector: `values[k]` sits on the adversary pair
    `adversary_edges[k]` (rows of a q x 2 array, in the order the pairs were added).
    `lineage` holds one JSON-ready record per construction step.
    """

    powers: np.ndarray
    friend_edges: Tuple[Tuple[int, int], ...]
    adversary_edges: np.ndarray
    values: np.ndarray
    lineage: Tuple[Dict[str, Any], ...]

    @property
    def n(self) -> int:
        return len(self.powers)

    @cached_property
    def graph(self) -> EnvironmentGraph:
        return build_environment(self.powers, self.friend_edges, self.adversary_edges.tolist())

    @cached_property
    def edge_vector(self) -> np.ndarray:
        """`values` in the lexicographic order of the adversary pairs."""
        ends = np.sort(self.adversary_edges, axis=1)
        order = np.lexsort((ends[:, 1], ends[:, 0]))
        return self.values[order]

    @cached_property
    def equilibrium(self) -> np.ndarray:
        return from_edge_vector(self.graph, self.edge_vector)


def _raised(values: np.ndarray, positions: Iterable[int], delta: Any) -> np.ndarray:
    """Copy of `values` with `delta` added at `positions`, promoting the dtype as needed."""
    out = values.astype(np.result_type(values, np.asarray(delta)))
    for k in positions:
        out[k] = out[k] + delta
    return out


def _incident(bundle: SeedBundle, i: int) -> np.ndarray:
    E = bundle.adversary_edges
    return (E[:, 0] == i) | (E[:, 1] == i)


def _verify_locally(bundle: SeedBundle, countries: Iterable[int]) -> SeedBundle:
    """Re-check C v = pi at the countries a step touched, and v >= 0."""
    tol = resolve_tolerance(None, bundle.values, bundle.powers)
    if len(bundle.values) and np.any(bundle.values < -tol):
        raise InvalidConstructionError("Edge values became negative.")
    for i in countries:
        load = bundle.values[_incident(bundle, i)].sum()
        if abs(load - bundle.powers[i]) > tol:
            raise InvalidConstructionError(f"Country {i} is no longer balanced.")
    return bundle


def seed_bundle(g: EnvironmentGraph, U: Any, tol: Optional[float] = None) -> SeedBundle:
    """
    Wrap a balanced equilibrium U of `g` as the start of a construction.

    Raises InvalidConstructionError if U is not balanced for `g`.
    """
    report = check_balanced(g, U, tol)
    if not report.balanced:
        raise InvalidConstructionError(
            f"Allocation is not a balanced equilibrium: {report.first.message}"
        )
    values = beta(g, check_square(U, g.n))
    record = {
        "op": "base",
        "powers": array_to_jsonable(g.powers),
        "friends": [list(p) for p in g.friend_edges],
        "adversaries": [list(p) for p in g.adversary_edges],
        "v": array_to_jsonable(values),
    }
    return SeedBundle(
        powers=g.powers,
        friend_edges=g.friend_edges,
        adversary_edges=np.asarray(g.adversary_edges, dtype=np.int64).reshape(-1, 2),
        values=values,
        lineage=(record,),
    )


def lemma1_extend(bundle: SeedBundle, i: int, j: int, delta: Any) -> SeedBundle:
    """
    Raise the powers of adversaries i and j by `delta` and the allocation between them
    by the same amount.

    Parameters
    ----------
    bundle (SeedBundle)
            Current game and equilibrium.
    i, j (int)
            An adversary pair of the current game.
    delta (int, Fraction, float)
            Positive increment.

    Returns
    -------
            SeedBundle
    """
    i, j = check_index(i, bundle.n), check_index(j, bundle.n)
    delta = to_number(delta)
    if not delta > 0:
        raise ValueError("Delta should be positive.")
    E = bundle.adversary_edges
    hits = np.flatnonzero(((E[:, 0] == i) & (E[:, 1] == j)) | ((E[:, 0] == j) & (E[:, 1] == i)))
    if not len(hits):
        raise InvalidConstructionError(f"({i}, {j}) is not an adversary pair.")
    record = {"op": "lemma1", "i": i, "j": j, "delta": to_jsonable(delta)}
    logger.debug("lemma1 step on (%d, %d) with delta %s", i, j, delta)
    extended = SeedBundle(
        powers=_raised(bundle.powers, (i, j), delta),
        friend_edges=bundle.friend_edges,
        adversary_edges=E,
        values=_raised(bundle.values, hits[:1], delta),
        lineage=bundle.lineage + (record,),
    )
    return _verify_locally(extended, (i, j))


def lemma10_add_node(bundle: SeedBundle, i: int) -> SeedBundle:
    """
    Add a zero-power country whose only relation is an adversary pair with country i.

    The equilibrium is bordered with a zero row and column. Country i must already have
    adversaries or have zero power; otherwise it could no longer spend all its power on
    adversaries and the step is rejected.
    """
    i = check_index(i, bundle.n)
    if not _incident(bundle, i).any() and bundle.powers[i] != 0:
        raise InvalidConstructionError(
            f"Country {i} has no adversaries and power {bundle.powers[i]}; "
            "a new adversary would unbalance it."
        )
    node = bundle.n
    record = {"op": "lemma10", "i": i, "node": node}
    logger.debug("lemma10 step: country %d attached to %d", node, i)
    extended = SeedBundle(
        powers=np.append(bundle.powers, np.zeros(1, dtype=bundle.powers.dtype)),
        friend_edges=bundle.friend_edges,
        adversary_edges=np.vstack([bundle.adversary_edges, [[i, node]]]),
        values=np.append(bundle.values, np.zeros(1, dtype=bundle.values.dtype)),
        lineage=bundle.lineage + (record,),
    )
    return _verify_locally(extended, (i, node))


def _base_pair(power: Any) -> SeedBundle:
    g = build_environment([power, power], adversary_edges=[(0, 1)])
    return seed_bundle(g, from_edge_vector(g, [power]))


def random_balanced_instance(
    steps: int,
    seed: Optional[int] = None,
    base_power: Optional[int] = None,
    add_node_probability: float = ADD_NODE_PROBABILITY,
    max_delta: int = MAX_DELTA,
) -> SeedBundle:
    """
    Grow a game with a known balanced equilibrium from an equal-power adversary pair.

    Parameters
    ----------
    steps (int)
            Number of random construction steps.
    seed (int)
            Seed of the numpy random generator.
    base_power (int)
            Power c of both base countries. Drawn from BASE_POWER_RANGE when None.
    add_node_probability (float)
            Chance that a step adds a country rather than raising an adversary pair.
    max_delta (int)
            Raising steps use an integer delta drawn from 1..max_delta.

    Returns
    -------
            SeedBundle
    """
    steps = check_count(steps, "steps")
    check_probability(add_node_probability, "add_node_probability")
    max_delta = check_count(max_delta, "max_delta", minimum=1)
    rng = np.random.default_rng(seed)
    if base_power is None:
        low, high = BASE_POWER_RANGE
        base_power = int(rng.integers(low, high + 1))
    bundle = _base_pair(check_count(base_power, "base_power", minimum=1))
    for _ in range(steps):
        if rng.random() < add_node_probability:
            bundle = lemma10_add_node(bundle, int(rng.integers(bundle.n)))
        else:
            i, j = bundle.adversary_edges[int(rng.integers(len(bundle.adversary_edges)))]
            bundle = lemma1_extend(bundle, int(i), int(j), int(rng.integers(1, max_delta + 1)))
    logger.debug("random balanced instance: %d countries after %d steps", bundle.n, steps)
    return bundle


def replay_lineage(records: Iterable[Dict[str, Any]]) -> SeedBundle:
    """Rebuild a bundle from its lineage records."""
    records = list(records)
    if not records or records[0].get("op") != "base":
        raise ValueError("Lineage should start with a 'base' record.")
    base = records[0]
    g = build_environment(base["powers"], base.get("friends"), base.get("adversaries"))
    bundle = seed_bundle(g, from_edge_vector(g, base["v"]))
    for record in records[1:]:
        op = record.get("op")
        if op == "lemma1":
            bundle = lemma1_extend(bundle, record["i"], record["j"], record["delta"])
        elif op == "lemma10":
            bundle = lemma10_add_node(bundle, record["i"])
        else:
            raise ValueError(f"Unknown lineage operation '{op}'.")
    return bundle


def random_instance(
    n: int,
    edge_density: float,
    power_range: Tuple[int, int] = POWER_RANGE,
    sign_ratio: float = 0.5,
    seed: Optional[int] = None,
) -> EnvironmentGraph:
    """
    Random signed environment graph.

    Each of the n(n-1)/2 pairs is related with probability `edge_density`; a related pair
    is adversarial with probability `sign_ratio` and friendly otherwise. Integer powers are
    drawn uniformly from `power_range` (inclusive).
    """
    n = check_count(n, "n")
    check_probability(edge_density, "edge_density")
    check_probability(sign_ratio, "sign_ratio")
    low, high = check_range(power_range, "power_range")
    rng = np.random.default_rng(seed)
    powers = rng.integers(low, high + 1, size=n)
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)
    related = rng.random(len(pairs)) < edge_density
    hostile = rng.random(len(pairs)) < sign_ratio
    return build_environment(
        powers,
        friend_edges=pairs[related & ~hostile].tolist(),
        adversary_edges=pairs[related & hostile].tolist(),
    )


def random_complete_instance(
    n_a: int, power_range: Tuple[int, int] = POWER_RANGE, seed: Optional[int] = None
) -> EnvironmentGraph:
    """Random powers on n_a countries that are pairwise adversaries."""
    n_a = check_count(n_a, "n_a")
    low, high = check_range(power_range, "power_range")
    rng = np.random.default_rng(seed)
    powers = rng.integers(low, high + 1, size=n_a)
    return build_environment(powers, adversary_edges=list(combinations(range(n_a), 2)))


def random_bipartite_instance(
    n_left: int,
    n_right: int,
    edge_density: float,
    power_range: Tuple[int, int] = POWER_RANGE,
    seed: Optional[int] = None,
) -> EnvironmentGraph:
    """
    Random structurally balanced game: two camps of friends (countries 0..n_left-1 and the
    rest), with adversary pairs only across camps.

    Each cross pair is adversarial and each pair inside a camp is friendly with
    probability `edge_density`.
    """
    n_left = check_count(n_left, "n_left")
    n_right = check_count(n_right, "n_right")
    check_probability(edge_density, "edge_density")
    low, high = check_range(power_range, "power_range")
    rng = np.random.default_rng(seed)
    n = n_left + n_right
    powers = rng.integers(low, high + 1, size=n)
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)
    across = (pairs[:, 0] < n_left) & (pairs[:, 1] >= n_left)
    chosen = rng.random(len(pairs)) < edge_density
    return build_environment(
        powers,
        friend_edges=pairs[chosen & ~across].tolist(),
        adversary_edges=pairs[chosen & across].tolist(),
    )
