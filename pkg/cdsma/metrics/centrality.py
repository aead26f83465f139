"""
Betweenness-family centrality indices: BC, conditional BC and demand-weighted CBC
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from cdsma.errors import InvalidDemand, InvalidParameter, NegativeWeight
from cdsma.graph.core import Graph, ShortestPathField, hop_distance_matrix, shortest_path_field


@dataclass(frozen=True, eq=False)
class DemandVector:
    """Non-negative per-node service demand with at least one positive entry."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise InvalidDemand('demand must be a non-empty one-dimensional sequence')
        if not np.all(np.isfinite(w)):
            raise InvalidDemand('demand contains non-finite values')
        negative = np.flatnonzero(w < 0)
        if negative.size:
            node = int(negative[0])
            raise NegativeWeight(node, float(w[node]))
        if not np.any(w > 0):
            raise InvalidDemand('demand has no positive entry')
        w.setflags(write=False)
        object.__setattr__(self, 'weights', w)

    @classmethod
    def uniform(cls, node_count: int, value: float = 1.0) -> 'DemandVector':
        return cls(np.full(node_count, value, dtype=np.float64))

    @classmethod
    def from_iterable(cls, values: Iterable[float]) -> 'DemandVector':
        return cls(np.fromiter(values, dtype=np.float64))

    def __len__(self):
        return int(self.weights.size)

    def __getitem__(self, node):
        return float(self.weights[node])

    def __eq__(self, other):
        if not isinstance(other, DemandVector):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f'<DemandVector nodes={len(self)} total={self.total:.6g}>'

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))

    def scaled(self, factor: float) -> 'DemandVector':
        return DemandVector(self.weights * factor)

    def tolist(self) -> list[float]:
        return self.weights.tolist()


class CentralityKind(enum.Enum):
    BC = 'bc'
    CBC = 'cbc'
    WCBC = 'wcbc'


@dataclass(frozen=True, eq=False)
class CentralityVector:
    values: np.ndarray
    kind: CentralityKind
    target: int | None = None

    def __getitem__(self, node):
        return float(self.values[node])

    def __len__(self):
        return int(self.values.size)

    def ranking(self) -> list[int]:
        """Nodes by descending value, ascending id among equals."""
        values = self.values.tolist()
        return sorted(range(len(values)), key=lambda u: (-values[u], u))


def _field_for(g: Graph, t: int, field: ShortestPathField | None) -> ShortestPathField:
    if field is None:
        return shortest_path_field(g, t)
    if field.target != t:
        raise InvalidParameter(f'shortest-path field targets node {field.target}, not {t}')
    return field


def betweenness_centrality(g: Graph) -> CentralityVector:
    """Unnormalised BC over unordered node pairs, endpoints excluded."""
    n = g.node_count
    ones = np.ones(n)
    totals = np.zeros(n)
    for s in g.nodes:
        through, _ = shortest_path_field(g, s).propagate(ones)
        # each node's own unit is its self-term, not an intermediate visit
        through -= 1.0
        through[s] = 0.0
        totals += through
    values = totals / 2.0
    values.setflags(write=False)
    return CentralityVector(values, CentralityKind.BC)


def weighted_cbc(g: Graph, w: DemandVector, t: int,
                 field: ShortestPathField | None = None) -> CentralityVector:
    """Demand each source routes through every node on its shortest paths to ``t``.

    A node's own demand counts in full, so every entry but ``t``'s is at
    least that node's demand; the entry for ``t`` is 0. One BFS from ``t``
    plus one farthest-first accumulation pass.
    """
    if len(w) != g.node_count:
        raise InvalidDemand(f'demand has {len(w)} entries for {g.node_count} nodes')
    field = _field_for(g, t, field)
    through, _ = field.propagate(w.weights)
    through[t] = 0.0
    through.setflags(write=False)
    return CentralityVector(through, CentralityKind.WCBC, t)


def conditional_bc(g: Graph, t: int, field: ShortestPathField | None = None) -> CentralityVector:
    """CBC(u;t): weighted_cbc under unit demand."""
    wcbc = weighted_cbc(g, DemandVector.uniform(g.node_count), t, field)
    return CentralityVector(wcbc.values, CentralityKind.CBC, t)


def closeness(g: Graph, distances: np.ndarray | None = None) -> np.ndarray:
    """Closeness centrality (n-1) / sum of hop distances."""
    if distances is None:
        distances = hop_distance_matrix(g)
    if g.node_count == 1:
        return np.zeros(1)
    return (g.node_count - 1) / distances.sum(axis=1)
