"""
Max-flow reduction for bipartite adversary graphs.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Optional, Tuple
import networkx as nx
from networkx.algorithms.flow import edmonds_karp
from powerbalance.game import EnvironmentGraph
from powerbalance.number_utils import Number
from powerbalance.number_utils import resolve_tolerance
from powerbalance.number_utils import to_number

logger = logging.getLogger(__name__)

SOURCE = "s"
SINK = "t"

Arc = Tuple[Hashable, Hashable]


@dataclass(frozen=True, eq=False)
class FlowNetwork:
    """
    Source/sink network of a bipartition (left, right).

    Arcs s -> i (capacity p_i) for i in `left`, i -> j (capacity `sentinel`) for every
    adversary pair with i in `left`, and j -> t (capacity p_j) for j in `right`.
    """

    graph: nx.DiGraph
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    sentinel: Number
    source: str = SOURCE
    sink: str = SINK


@dataclass(frozen=True)
class FlowResult:
    """
    Maximum flow with its per-arc values.

    `unsaturated_source` and `unsaturated_sink` list the countries whose source or sink
    arc carries less than its capacity. Both empty means the flow certifies a balanced
    equilibrium.
    """

    value: Number
    flows: Dict[Arc, Number]
    unsaturated_source: Tuple[int, ...] = field(default_factory=tuple)
    unsaturated_sink: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def saturated(self) -> bool:
        return not self.unsaturated_source and not self.unsaturated_sink


def build_flow_network(g: EnvironmentGraph, left, right) -> FlowNetwork:
    """
    Build the flow network for a bipartition of the adversary subgraph.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    left, right (list-like)
            The two sides. Every adversary pair must have one endpoint on each side.

    Returns
    -------
            FlowNetwork. Infinite capacities are the finite sentinel 1 + sum(p).
    """
    left, right = tuple(left), tuple(right)
    left_set = set(left)
    sentinel = to_number(1 + sum(to_number(p) for p in g.powers))
    G = nx.DiGraph()
    G.add_node(SOURCE)
    G.add_nodes_from(left)
    G.add_nodes_from(right)
    G.add_node(SINK)
    for i in left:
        G.add_edge(SOURCE, i, capacity=to_number(g.powers[i]))
    for i, j in g.adversary_edges:
        tail, head = (i, j) if i in left_set else (j, i)
        G.add_edge(tail, head, capacity=sentinel)
    for j in right:
        G.add_edge(j, SINK, capacity=to_number(g.powers[j]))
    return FlowNetwork(graph=G, left=left, right=right, sentinel=sentinel)


def max_flow(net: FlowNetwork, tol: Optional[float] = None) -> FlowResult:
    """
    Maximum s-t flow by shortest augmenting paths (Edmonds-Karp).

    Integral capacities give an integral flow.
    """
    value, flow_dict = nx.maximum_flow(
        net.graph, net.source, net.sink, capacity="capacity", flow_func=edmonds_karp
    )
    flows = {
        (u, v): to_number(flow_dict[u][v]) for u, v in net.graph.edges()
    }
    capacities = nx.get_edge_attributes(net.graph, "capacity")
    tol = resolve_tolerance(tol, *capacities.values()) if capacities else 0
    short_source = tuple(
        i for i in net.left if capacities[(net.source, i)] - flows[(net.source, i)] > tol
    )
    short_sink = tuple(
        j for j in net.right if capacities[(j, net.sink)] - flows[(j, net.sink)] > tol
    )
    logger.debug(
        "max flow %s over %d arcs, %d source and %d sink arcs unsaturated",
        value,
        len(flows),
        len(short_source),
        len(short_sink),
    )
    return FlowResult(
        value=to_number(value),
        flows=flows,
        unsaturated_source=short_source,
        unsaturated_sink=short_sink,
    )
