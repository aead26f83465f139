"""
Synthetic topologies and Zipf service-demand generators
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from cdsma.errors import ClusterDoesNotFit, InvalidParameter, NodeIdOutOfRange
from cdsma.graph.core import Graph, build_graph, hop_distance_matrix
from cdsma.metrics.centrality import DemandVector

DEFAULT_BA_EDGES = 2


def gen_ring(N: int) -> Graph:
    """Cycle on N nodes, node i linked to i+1 mod N."""
    if N < 3:
        raise InvalidParameter(f'ring needs at least 3 nodes, got {N}')
    return build_graph(((i, (i + 1) % N) for i in range(N)), N)


def grid_node(cols: int, row: int, col: int) -> int:
    """Node id of 1-based grid position ``(row, col)``."""
    return (row - 1) * cols + (col - 1)


def grid_position(cols: int, node: int) -> tuple[int, int]:
    """1-based ``(row, col)`` of a grid node id."""
    return node // cols + 1, node % cols + 1


def gen_grid(M: int, N: int) -> Graph:
    """M rows by N columns, 4-neighbour lattice."""
    if M < 2 or N < 2:
        raise InvalidParameter(f'grid needs at least 2x2 nodes, got {M}x{N}')
    edges = []
    for row in range(1, M + 1):
        for col in range(1, N + 1):
            node = grid_node(N, row, col)
            if col < N:
                edges.append((node, node + 1))
            if row < M:
                edges.append((node, node + N))
    return build_graph(edges, M * N)


def gen_barabasi_albert(N: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential attachment grown from a clique on ``m + 1`` nodes.

    Every later node links to ``m`` distinct earlier nodes drawn with
    probability proportional to their current degree.
    """
    if not N > m >= 1:
        raise InvalidParameter(f'Barabasi-Albert needs N > m >= 1, got N={N}, m={m}')
    G = nx.barabasi_albert_graph(N, m, seed=int(rng.integers(2 ** 32)),
                                 initial_graph=nx.complete_graph(m + 1))
    return build_graph(G.edges(), N)


class DemandAssignment(enum.Enum):
    RANDOM_PERMUTATION = 'random'
    CLUSTERED = 'clustered'


@dataclass(frozen=True)
class ZipfDemandSpec:
    """Zipf demand with skew ``s``; ``cluster_head=None`` draws a random head."""

    s: float = 0.0
    assignment: DemandAssignment = DemandAssignment.RANDOM_PERMUTATION
    cluster_head: int | None = None
    cluster_radius: int = 1

    def __post_init__(self):
        if not self.s >= 0:
            raise InvalidParameter(f'Zipf skew must be non-negative, got {self.s}')
        if self.assignment is DemandAssignment.CLUSTERED and self.cluster_radius not in (1, 2):
            raise InvalidParameter(f'cluster radius must be 1 or 2, got {self.cluster_radius}')

    @property
    def clustered(self) -> bool:
        return self.assignment is DemandAssignment.CLUSTERED

    def to_dict(self):
        return {
            's': self.s,
            'assignment': self.assignment.value,
            'cluster_head': self.cluster_head,
            'cluster_radius': self.cluster_radius,
        }


@dataclass(frozen=True)
class ContrastReport:
    K: int
    z_fraction: float
    C_sp: float

    def to_dict(self):
        return {'K': self.K, 'z_fraction': self.z_fraction, 'C_sp': self.C_sp}


def zipf_weights(N: int, s: float) -> np.ndarray:
    """Normalised Zipf weights for ranks 1..N."""
    ranks = np.arange(1, N + 1, dtype=np.float64)
    raw = 1.0 / ranks ** s
    return raw / math.fsum(raw.tolist())


def cluster_size(radius: int) -> int:
    """Nodes in a complete radius-R ball of a 4-neighbour lattice."""
    return 2 * radius * (radius + 1) + 1


def contrast_report(K: int, s: float, N: int) -> ContrastReport:
    if not 1 <= K < N:
        raise InvalidParameter(f'cluster size must satisfy 1 <= K < N, got K={K}, N={N}')
    terms = [1.0 / n ** s for n in range(1, N + 1)]
    inside = math.fsum(terms[:K])
    outside = math.fsum(terms[K:])
    return ContrastReport(K=K, z_fraction=inside / (inside + outside), C_sp=inside / outside)


def spatial_contrast(K: int, s: float, N: int) -> float:
    """Demand of the top K ranks over the demand of the rest."""
    return contrast_report(K, s, N).C_sp


def _is_lattice_ball(g: Graph, within: np.ndarray, head: int, radius: int) -> bool:
    """The radius-R ball around ``head`` is a complete 4-neighbour diamond."""
    ball = [int(u) for u in np.flatnonzero(within[head])]
    if len(ball) != cluster_size(radius):
        return False
    inner_edges = sum(1 for u in ball for v in g.neighbors(u) if within[head, v]) // 2
    return inner_edges == 4 * radius * radius


def _cluster_ball(g: Graph, spec: ZipfDemandSpec, rng: np.random.Generator) -> tuple[int, list[int]]:
    radius = spec.cluster_radius
    required = cluster_size(radius)
    max_degree = int(g.degrees().max())
    if max_degree > 4:
        raise InvalidParameter(f'clustered demand needs a 4-neighbour lattice, found degree {max_degree}')
    within = hop_distance_matrix(g) <= radius
    if spec.cluster_head is None:
        eligible = [u for u in g.nodes if _is_lattice_ball(g, within, u, radius)]
        if not eligible:
            raise ClusterDoesNotFit(None, radius, 0, required)
        head = int(rng.choice(eligible))
    else:
        head = spec.cluster_head
        if not 0 <= head < g.node_count:
            raise NodeIdOutOfRange(head, g.node_count)
    ball = [int(u) for u in np.flatnonzero(within[head])]
    if not _is_lattice_ball(g, within, head, radius):
        raise ClusterDoesNotFit(head, radius, len(ball), required)
    return head, ball


def assign_zipf_demand(g: Graph, spec: ZipfDemandSpec,
                       rng: np.random.Generator) -> tuple[DemandVector, frozenset[int]]:
    """Zipf demand plus the set of cluster nodes (empty unless clustered).

    Clustered demand gives rank 1 to the head, ranks 2..K to the rest of its
    ball in random order and the remaining ranks randomly outside it.
    """
    weights = zipf_weights(g.node_count, spec.s)
    if not spec.clustered:
        order = [int(u) for u in rng.permutation(g.node_count)]
        cluster = frozenset()
    else:
        head, ball = _cluster_ball(g, spec, rng)
        members = set(ball)
        rest_of_ball = [u for u in ball if u != head]
        outside = [u for u in g.nodes if u not in members]
        order = ([head]
                 + [int(u) for u in rng.permutation(rest_of_ball)]
                 + [int(u) for u in rng.permutation(outside)])
        cluster = frozenset(ball)
    demand = np.empty(g.node_count, dtype=np.float64)
    demand[order] = weights
    return DemandVector(demand), cluster


def gen_zipf_demand(g: Graph, spec: ZipfDemandSpec, rng: np.random.Generator) -> DemandVector:
    demand, _ = assign_zipf_demand(g, spec, rng)
    return demand
