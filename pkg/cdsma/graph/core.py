"""
Undirected unit-weight graphs and shortest-path counting
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

from cdsma.errors import DisconnectedGraph, EmptyGraph, NodeIdOutOfRange, SelfLoop

logger = logging.getLogger(__name__)

INT64_MAX = int(np.iinfo(np.int64).max)


@dataclass(frozen=True)
class Graph:
    """Simple, connected, undirected graph over dense node ids 0..n-1.

    ``adjacency[u]`` holds the neighbours of ``u`` in ascending order. All
    links weigh one hop.
    """

    node_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.node_count <= 0:
            raise EmptyGraph()
        if len(self.adjacency) != self.node_count:
            raise ValueError(
                f'adjacency has {len(self.adjacency)} rows for {self.node_count} nodes'
            )
        for u, row in enumerate(self.adjacency):
            for v in row:
                if v == u:
                    raise SelfLoop(u)
                if not 0 <= v < self.node_count:
                    raise NodeIdOutOfRange(v, self.node_count)
                if u not in self.adjacency[v]:
                    raise ValueError(f'edge ({u}, {v}) is not symmetric')
        unreachable = _unreachable_from_zero(self.adjacency)
        if unreachable:
            raise DisconnectedGraph(unreachable)

    def __len__(self):
        return self.node_count

    def __repr__(self):
        return f'<Graph nodes={self.node_count} edges={self.edge_count}>'

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> np.ndarray:
        return np.array([len(row) for row in self.adjacency], dtype=np.int64)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class ShortestPathField:
    """Shortest-path structure of every node towards one target.

    ``sigma[u]`` counts the distinct shortest paths from ``u`` to ``target``
    and ``preds[u]`` lists the neighbours of ``u`` one hop closer to it.
    ``order`` visits nodes farthest first, ascending id within a distance
    level; every accumulation over the field follows it so results are
    bit-reproducible.
    """

    target: int
    dist: np.ndarray
    sigma: np.ndarray
    preds: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    approximate_counts: bool = False

    def propagate(self, mass, absorbing=frozenset()) -> tuple[np.ndarray, np.ndarray]:
        """Push per-node mass along all shortest paths towards the target.

        Mass leaving ``u`` splits over ``preds[u]`` in proportion to the share
        of ``u``'s shortest paths each predecessor carries. Nodes in
        ``absorbing`` keep whatever reaches them and forward nothing.

        Returns ``(throughput, absorbed)``: the total mass that passed through
        each node (own mass included) and the mass retained by absorbing
        nodes.
        """
        flow = [float(x) for x in mass]
        absorbed = [0.0] * len(flow)
        sigma = self.sigma.tolist()
        target = self.target
        for u in self.order:
            if u in absorbing:
                absorbed[u] = flow[u]
                continue
            if u == target or flow[u] == 0.0:
                continue
            share = flow[u] / sigma[u]
            for p in self.preds[u]:
                flow[p] += share * sigma[p]
        return np.array(flow), np.array(absorbed)


def _unreachable_from_zero(adjacency) -> list[int]:
    seen = [False] * len(adjacency)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return [u for u, ok in enumerate(seen) if not ok]


def _checked_edges(edge_list: Iterable, node_count: int) -> list[tuple[int, int]]:
    edges = []
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        for node in (u, v):
            if not 0 <= node < node_count:
                raise NodeIdOutOfRange(node, node_count)
        if u == v:
            raise SelfLoop(u)
        edges.append((u, v))
    return edges


def _adjacency(node_count: int, edges) -> tuple[tuple[int, ...], ...]:
    neighbours = [set() for _ in range(node_count)]
    for u, v in edges:
        neighbours[u].add(v)
        neighbours[v].add(u)
    return tuple(tuple(sorted(row)) for row in neighbours)


def build_graph(edge_list: Iterable, node_count: int, *, extract_mcc: bool = False) -> Graph:
    """Build a graph from node-id pairs; duplicate edges collapse into one.

    A disconnected edge list raises :class:`DisconnectedGraph` unless
    ``extract_mcc`` is set, in which case the maximal connected component is
    returned (use :func:`maximal_connected_component` to also get the id map).
    """
    if node_count <= 0:
        raise EmptyGraph()
    edges = _checked_edges(edge_list, node_count)
    if extract_mcc:
        graph, _ = maximal_connected_component(edges, node_count)
        return graph
    return Graph(node_count, _adjacency(node_count, edges))


def maximal_connected_component(edge_list: Iterable, node_count: int) -> tuple[Graph, dict[int, int]]:
    """Largest connected component, re-densified in ascending original id.

    Ties between equally large components go to the one holding the smallest
    original id. Returns the graph and the old-to-new id map.
    """
    if node_count <= 0:
        raise EmptyGraph()
    edges = _checked_edges(edge_list, node_count)
    g = nx.Graph()
    g.add_nodes_from(range(node_count))
    g.add_edges_from(edges)
    largest = min(nx.connected_components(g), key=lambda comp: (-len(comp), min(comp)))
    kept = sorted(largest)
    id_map = {old: new for new, old in enumerate(kept)}
    relabelled = [(id_map[u], id_map[v]) for u, v in edges if u in id_map]
    if len(kept) < node_count:
        logger.debug('mCC keeps %d of %d nodes', len(kept), node_count)
    return Graph(len(kept), _adjacency(len(kept), relabelled)), id_map


def shortest_path_field(g: Graph, target: int) -> ShortestPathField:
    """BFS from ``target`` recording distances, path counts and predecessors."""
    n = g.node_count
    if not 0 <= target < n:
        raise NodeIdOutOfRange(target, n)
    dist = [-1] * n
    sigma = [0] * n
    preds = [[] for _ in range(n)]
    dist[target] = 0
    sigma[target] = 1
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)

    approximate = max(sigma) > INT64_MAX
    if approximate:
        logger.warning(
            'shortest-path counts towards node %d exceed 64 bits; using floating-point counts',
            target,
        )
        sigma_arr = np.array([float(s) for s in sigma], dtype=np.float64)
    else:
        sigma_arr = np.array(sigma, dtype=np.int64)
    dist_arr = np.array(dist, dtype=np.int64)
    dist_arr.setflags(write=False)
    sigma_arr.setflags(write=False)
    order = tuple(sorted(range(n), key=lambda u: (-dist[u], u)))
    return ShortestPathField(
        target=target,
        dist=dist_arr,
        sigma=sigma_arr,
        preds=tuple(tuple(sorted(p)) for p in preds),
        order=order,
        approximate_counts=approximate,
    )


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distance from ``source`` to every node."""
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return np.array(dist, dtype=np.int64)


def hop_distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; row ``u`` holds d(u, ·)."""
    matrix = np.vstack([bfs_distances(g, u) for u in g.nodes])
    matrix.setflags(write=False)
    return matrix


def enumerate_shortest_paths(field: ShortestPathField, source: int) -> list[tuple[int, ...]]:
    """Every shortest path from ``source`` to the field's target, by DFS over preds.

    Exponential on lattices; meant for small graphs and cross-checks.
    """
    paths = []
    stack = [(source, (source,))]
    while stack:
        node, path = stack.pop()
        if node == field.target:
            paths.append(path)
            continue
        for p in reversed(field.preds[node]):
            stack.append((p, path + (p,)))
    return paths


@dataclass(frozen=True)
class TopologySummary:
    nodes: int
    edges: int
    diameter: int
    mean_degree: float
    max_degree: int

    def to_dict(self):
        return {
            'nodes': self.nodes,
            'edges': self.edges,
            'diameter': self.diameter,
            'mean_degree': round(self.mean_degree, 4),
            'max_degree': self.max_degree,
        }


def summarize(g: Graph, distances: np.ndarray | None = None) -> TopologySummary:
    """Size, diameter and degree statistics of a topology."""
    if distances is None:
        distances = hop_distance_matrix(g)
    degrees = g.degrees()
    return TopologySummary(
        nodes=g.node_count,
        edges=g.edge_count,
        diameter=int(distances.max()),
        mean_degree=float(degrees.mean()),
        max_degree=int(degrees.max()),
    )
