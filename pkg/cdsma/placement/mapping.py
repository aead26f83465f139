"""
1-median subgraph extraction and demand mapping onto it
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cdsma.errors import InvalidDemand, InvalidParameter, NodeIdOutOfRange
from cdsma.graph.core import Graph, ShortestPathField, bfs_distances, shortest_path_field
from cdsma.metrics.centrality import DemandVector, weighted_cbc

# keeps products such as 0.3 * 10 from rounding up to an extra node
_QUOTA_SLACK = 1e-9


@dataclass(frozen=True)
class Subgraph:
    """Candidate hosts for one 1-median solve; always contains the current host."""

    members: frozenset[int]
    host: int
    alpha: float | None = None
    radius: int | None = None

    def __post_init__(self):
        if self.host not in self.members:
            raise ValueError(f'host {self.host} missing from subgraph members')

    def __len__(self):
        return len(self.members)

    def __contains__(self, node):
        return node in self.members

    @property
    def ordered(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True, eq=False)
class EffectiveDemand:
    """Per-member demand after crediting outside demand to entry nodes.

    ``w_eff[i] = native demand + w_map[i]`` for member ``nodes[i]``.
    """

    nodes: tuple[int, ...]
    w_eff: np.ndarray
    w_map: np.ndarray

    def __len__(self):
        return len(self.nodes)

    @property
    def total(self) -> float:
        return math.fsum(self.w_eff.tolist())

    def effective(self, node: int) -> float:
        return float(self.w_eff[self.nodes.index(node)])

    def mapped(self, node: int) -> float:
        return float(self.w_map[self.nodes.index(node)])

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.nodes, self.w_eff.tolist()))


def subgraph_quota(alpha: float, node_count: int) -> int:
    """Number of top-ranked nodes "alpha % of G" stands for."""
    if not 0 < alpha <= 1:
        raise InvalidParameter(f'alpha must lie in (0, 1], got {alpha}')
    return min(node_count, max(1, math.ceil(alpha * node_count - _QUOTA_SLACK)))


def select_subgraph(g: Graph, w: DemandVector, host: int, alpha: float,
                    field: ShortestPathField | None = None) -> Subgraph:
    """Top ``alpha`` share of nodes by wCBC towards ``host``, plus the host."""
    quota = subgraph_quota(alpha, g.node_count)
    ranking = weighted_cbc(g, w, host, field).ranking()
    members = frozenset(ranking[:quota]) | {host}
    return Subgraph(members=members, host=host, alpha=alpha)


def neighborhood_subgraph(g: Graph, host: int, radius: int,
                          distances: np.ndarray | None = None) -> Subgraph:
    """All nodes within ``radius`` hops of ``host``."""
    if radius < 1:
        raise InvalidParameter(f'radius must be at least 1, got {radius}')
    if not 0 <= host < g.node_count:
        raise NodeIdOutOfRange(host, g.node_count)
    row = distances[host] if distances is not None else bfs_distances(g, host)
    members = frozenset(int(u) for u in np.flatnonzero(row <= radius))
    return Subgraph(members=members | {host}, host=host, radius=radius)


def map_demand(g: Graph, w: DemandVector, sub: Subgraph,
               field: ShortestPathField | None = None) -> EffectiveDemand:
    """Credit each outside node's demand to the first member on each of its shortest paths.

    Every outside node splits its demand evenly over its shortest paths to
    the host; the share of a path lands on the member closest to the source
    along it. Members keep their native demand unmapped. The host lies on
    every path, so the mapped total equals the outside total.
    """
    if len(w) != g.node_count:
        raise InvalidDemand(f'demand has {len(w)} entries for {g.node_count} nodes')
    if field is None:
        field = shortest_path_field(g, sub.host)
    elif field.target != sub.host:
        raise InvalidParameter(f'shortest-path field targets node {field.target}, not host {sub.host}')

    outside = w.weights.copy()
    nodes = sub.ordered
    outside[list(nodes)] = 0.0
    _, absorbed = field.propagate(outside, absorbing=sub.members)

    w_map = absorbed[list(nodes)]
    w_eff = w.weights[list(nodes)] + w_map
    w_map.setflags(write=False)
    w_eff.setflags(write=False)
    return EffectiveDemand(nodes=nodes, w_eff=w_eff, w_map=w_map)
