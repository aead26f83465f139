"""
Aggregate access cost and exact 1-median solvers
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cdsma.errors import InvalidDemand, InvalidParameter
from cdsma.graph.core import Graph, bfs_distances, hop_distance_matrix
from cdsma.metrics.centrality import DemandVector
from cdsma.placement.mapping import EffectiveDemand, Subgraph


@dataclass(frozen=True)
class PlacementResult:
    host: int
    cost: float
    tie_set: frozenset[int]

    def to_dict(self):
        return {
            'host': self.host,
            'cost': self.cost,
            'tie_set': sorted(self.tie_set),
        }


def _weighted_cost(hops: np.ndarray, weights: np.ndarray) -> float:
    # exact rounding: equal multisets of terms give equal costs in any order
    return math.fsum((hops * weights).tolist())


def _pick(costs: list[tuple[int, float]], rng: np.random.Generator) -> PlacementResult:
    best = min(cost for _, cost in costs)
    ties = sorted(node for node, cost in costs if cost == best)
    host = ties[0] if len(ties) == 1 else int(rng.choice(ties))
    return PlacementResult(host=host, cost=best, tie_set=frozenset(ties))


def access_cost(g: Graph, w: DemandVector, k: int, distances: np.ndarray | None = None) -> float:
    """Sum over nodes of demand times hop distance to ``k``."""
    if len(w) != g.node_count:
        raise InvalidDemand(f'demand has {len(w)} entries for {g.node_count} nodes')
    hops = distances[k] if distances is not None else bfs_distances(g, k)
    return _weighted_cost(hops, w.weights)


def solve_1median_exact(g: Graph, w: DemandVector, rng: np.random.Generator,
                        distances: np.ndarray | None = None) -> PlacementResult:
    """Evaluate every node; a uniformly random minimiser becomes the host."""
    if len(w) != g.node_count:
        raise InvalidDemand(f'demand has {len(w)} entries for {g.node_count} nodes')
    if distances is None:
        distances = hop_distance_matrix(g)
    costs = [(k, _weighted_cost(distances[k], w.weights)) for k in g.nodes]
    return _pick(costs, rng)


def solve_1median_subgraph(g: Graph, sub: Subgraph, eff: EffectiveDemand,
                           rng: np.random.Generator,
                           distances: np.ndarray | None = None) -> PlacementResult:
    """1-median over subgraph members with effective demands.

    Distances are full-graph hop counts; the induced subgraph may well be
    disconnected.
    """
    nodes = sub.ordered
    if nodes != eff.nodes:
        raise InvalidParameter('effective demand is not defined on the subgraph members')
    index = list(nodes)
    costs = []
    for x in nodes:
        hops = distances[x] if distances is not None else bfs_distances(g, x)
        costs.append((x, _weighted_cost(hops[index], eff.w_eff)))
    return _pick(costs, rng)
