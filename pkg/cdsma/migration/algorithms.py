"""
Iterative service migration: wCBC-driven cDSMA and the locality-oriented LOM baseline
"""
from __future__ import annotations

import enum
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from cdsma.errors import NodeIdOutOfRange
from cdsma.graph.core import Graph, ShortestPathField, hop_distance_matrix, shortest_path_field
from cdsma.metrics.centrality import DemandVector
from cdsma.placement.mapping import (
    Subgraph,
    map_demand,
    neighborhood_subgraph,
    select_subgraph,
    subgraph_quota,
)
from cdsma.placement.median import access_cost, solve_1median_subgraph

logger = logging.getLogger(__name__)

DEFAULT_LOM_RADIUS = 1


class TraceViolation(str, enum.Enum):
    NON_DECREASING_COST = 'NonDecreasingCost'
    ITERATION_BOUND = 'IterationBound'
    MULTIPLE_REVISITS = 'MultipleRevisits'
    UNKNOWN_NODE = 'UnknownNode'

    def __str__(self):
        return self.value


@dataclass
class MigrationTrace:
    """Record of one migration run.

    ``hosts`` starts with the generation node and gains an entry per actual
    relocation. ``costs`` holds the accepted subgraph costs in order;
    ``halting_cost`` is the value that failed the decrease test.
    """

    algorithm: str
    hosts: list[int]
    costs: list[float] = field(default_factory=list)
    subgraphs: list[frozenset[int]] = field(default_factory=list)
    final_host: int | None = None
    final_global_cost: float | None = None
    halting_cost: float | None = None
    iterations: int = 0

    @property
    def start(self) -> int:
        return self.hosts[0]

    @property
    def hop_count(self) -> int:
        return len(self.hosts) - 1

    def to_dict(self):
        return {
            'algorithm': self.algorithm,
            'hosts': list(self.hosts),
            'costs': list(self.costs),
            'subgraph_sizes': [len(s) for s in self.subgraphs],
            'final_host': self.final_host,
            'final_global_cost': self.final_global_cost,
            'halting_cost': self.halting_cost,
            'hop_count': self.hop_count,
            'iterations': self.iterations,
        }


SubgraphSelector = Callable[[int, ShortestPathField], Subgraph]


def _migrate(g: Graph, w: DemandVector, start: int, select: SubgraphSelector,
             rng: np.random.Generator, distances: np.ndarray | None,
             algorithm: str) -> MigrationTrace:
    if not 0 <= start < g.node_count:
        raise NodeIdOutOfRange(start, g.node_count)
    if distances is None:
        distances = hop_distance_matrix(g)

    trace = MigrationTrace(algorithm=algorithm, hosts=[start])
    host = start
    current = math.inf
    while True:
        sp_field = shortest_path_field(g, host)
        sub = select(host, sp_field)
        eff = map_demand(g, w, sub, sp_field)
        placement = solve_1median_subgraph(g, sub, eff, rng, distances)
        trace.iterations += 1
        trace.subgraphs.append(sub.members)
        logger.debug(
            '%s iteration %d at host %d: |G|=%d, best %d with cost %.6g',
            algorithm, trace.iterations, host, len(sub), placement.host, placement.cost,
        )
        if not placement.cost < current:
            trace.halting_cost = placement.cost
            break
        current = placement.cost
        trace.costs.append(current)
        if placement.host != host:
            host = placement.host
            trace.hosts.append(host)

    trace.final_host = host
    trace.final_global_cost = access_cost(g, w, host, distances)
    return trace


def run_cdsma(g: Graph, w: DemandVector, start: int, alpha: float,
              rng: np.random.Generator, distances: np.ndarray | None = None) -> MigrationTrace:
    """Migrate from ``start`` over top-wCBC subgraphs until the cost stops falling."""
    subgraph_quota(alpha, g.node_count)

    def select(host, sp_field):
        return select_subgraph(g, w, host, alpha, sp_field)

    return _migrate(g, w, start, select, rng, distances, 'cdsma')


def run_lom(g: Graph, w: DemandVector, start: int, radius: int,
            rng: np.random.Generator, distances: np.ndarray | None = None) -> MigrationTrace:
    """Same loop as cDSMA, candidates restricted to the ``radius``-hop ball."""
    if distances is None:
        distances = hop_distance_matrix(g)

    def select(host, sp_field):
        return neighborhood_subgraph(g, host, radius, distances)

    return _migrate(g, w, start, select, rng, distances, 'lom')


def verify_trace(trace: MigrationTrace, g: Graph, node_count: int | None = None) -> list[TraceViolation]:
    """Convergence guarantees a trace must satisfy; an empty list means valid."""
    if node_count is None:
        node_count = g.node_count
    violations = []
    if any(not 0 <= h < node_count for h in trace.hosts):
        violations.append(TraceViolation.UNKNOWN_NODE)
    if any(later >= earlier for earlier, later in zip(trace.costs, trace.costs[1:])):
        violations.append(TraceViolation.NON_DECREASING_COST)
    if trace.iterations > node_count + 1:
        violations.append(TraceViolation.ITERATION_BOUND)
    visits = Counter(trace.hosts)
    revisited = [node for node, count in visits.items() if count > 1]
    if len(revisited) > 1 or any(visits[node] > 2 for node in revisited):
        violations.append(TraceViolation.MULTIPLE_REVISITS)
    return violations
