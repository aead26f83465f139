"""
Experiment parameters: topology source, demand, algorithm and start-node policy
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from cdsma.errors import InputError, InvalidParameter
from cdsma.graph.core import Graph
from cdsma.metrics.centrality import DemandVector
from cdsma.migration.algorithms import DEFAULT_LOM_RADIUS, MigrationTrace, run_cdsma, run_lom
from cdsma.placement.mapping import subgraph_quota
from cdsma.placement.median import PlacementResult
from cdsma.topology.generators import (
    DEFAULT_BA_EDGES,
    DemandAssignment,
    ZipfDemandSpec,
    gen_barabasi_albert,
    gen_grid,
    gen_ring,
)
from cdsma.topology.io import TopologySnapshot, load_edge_list


class TopologyKind(enum.Enum):
    BA = 'ba'
    GRID = 'grid'
    RING = 'ring'
    FILE = 'file'


@dataclass(frozen=True)
class TopologySpec:
    kind: TopologyKind = TopologyKind.BA
    nodes: int = 100
    rows: int | None = None
    cols: int | None = None
    ba_m: int = DEFAULT_BA_EDGES
    path: str | None = None

    def __post_init__(self):
        if self.kind is TopologyKind.BA and not self.nodes > self.ba_m >= 1:
            raise InvalidParameter(f'Barabasi-Albert needs N > m >= 1, got N={self.nodes}, m={self.ba_m}')
        if self.kind is TopologyKind.FILE and not self.path:
            raise InvalidParameter('file topology needs a path')
        if self.kind is TopologyKind.GRID:
            rows, cols = self.shape
            if rows * cols < 4:
                raise InvalidParameter(f'grid {rows}x{cols} is too small')

    @classmethod
    def parse(cls, source: str, **params) -> 'TopologySpec':
        """Build from a ``--topology`` value: ``ba``, ``grid``, ``ring`` or ``file:PATH``."""
        if source.startswith('file:'):
            return cls(kind=TopologyKind.FILE, path=source[len('file:'):], **params)
        try:
            kind = TopologyKind(source)
        except ValueError:
            raise InvalidParameter(f'unknown topology {source!r}') from None
        if kind is TopologyKind.FILE:
            raise InvalidParameter('use file:PATH for file topologies')
        return cls(kind=kind, **params)

    @property
    def shape(self) -> tuple[int, int]:
        if self.rows and self.cols:
            return self.rows, self.cols
        side = math.isqrt(self.nodes)
        if side * side != self.nodes:
            raise InvalidParameter(f'grid of {self.nodes} nodes needs explicit rows and cols')
        return side, side

    @property
    def is_random(self) -> bool:
        return self.kind is TopologyKind.BA

    def load_snapshot(self) -> TopologySnapshot:
        return load_edge_list(self.path)

    def build(self, rng: np.random.Generator | None = None) -> Graph:
        if self.kind is TopologyKind.BA:
            if rng is None:
                raise InvalidParameter('Barabasi-Albert topologies need a random generator')
            return gen_barabasi_albert(self.nodes, self.ba_m, rng)
        if self.kind is TopologyKind.GRID:
            return gen_grid(*self.shape)
        if self.kind is TopologyKind.RING:
            return gen_ring(self.nodes)
        return self.load_snapshot().graph

    def describe(self) -> str:
        if self.kind is TopologyKind.FILE:
            return f'file:{self.path}'
        if self.kind is TopologyKind.GRID:
            return 'grid({}x{})'.format(*self.shape)
        if self.kind is TopologyKind.BA:
            return f'ba(N={self.nodes},m={self.ba_m})'
        return f'ring(N={self.nodes})'

    def to_dict(self):
        data = asdict(self)
        data['kind'] = self.kind.value
        return data

    @classmethod
    def from_dict(cls, data) -> 'TopologySpec':
        data = dict(data)
        data['kind'] = TopologyKind(data.get('kind', 'ba'))
        return cls(**data)


class AlgorithmName(enum.Enum):
    CDSMA = 'cdsma'
    LOM = 'lom'


@dataclass(frozen=True)
class AlgorithmSpec:
    name: AlgorithmName = AlgorithmName.CDSMA
    alpha: float = 0.1
    radius: int = DEFAULT_LOM_RADIUS

    def __post_init__(self):
        if self.name is AlgorithmName.CDSMA:
            subgraph_quota(self.alpha, 1)
        if self.radius < 1:
            raise InvalidParameter(f'LOM radius must be at least 1, got {self.radius}')

    def run(self, g: Graph, w: DemandVector, start: int, rng: np.random.Generator,
            distances: np.ndarray | None = None) -> MigrationTrace:
        if self.name is AlgorithmName.CDSMA:
            return run_cdsma(g, w, start, self.alpha, rng, distances)
        return run_lom(g, w, start, self.radius, rng, distances)

    @property
    def label(self) -> str:
        if self.name is AlgorithmName.CDSMA:
            return f'cdsma({self.alpha:g})'
        return f'lom({self.radius})'

    def to_dict(self):
        return {'name': self.name.value, 'alpha': self.alpha, 'radius': self.radius}

    @classmethod
    def from_dict(cls, data) -> 'AlgorithmSpec':
        data = dict(data)
        data['name'] = AlgorithmName(data.get('name', 'cdsma'))
        return cls(**data)


class StartKind(enum.Enum):
    RANDOM = 'random'
    FIXED = 'fixed'
    AT_DISTANCE = 'at-distance'


@dataclass(frozen=True)
class StartPolicy:
    """Where the service is generated: anywhere, a given node, or D_gen hops from the optimum."""

    kind: StartKind = StartKind.RANDOM
    node: int | None = None
    distance: int | None = None

    def __post_init__(self):
        if self.kind is StartKind.FIXED and self.node is None:
            raise InvalidParameter('fixed start policy needs a node')
        if self.kind is StartKind.AT_DISTANCE and (self.distance is None or self.distance < 0):
            raise InvalidParameter('at-distance start policy needs a non-negative distance')

    def choose(self, g: Graph, distances: np.ndarray, optimum: PlacementResult,
               rng: np.random.Generator) -> int | None:
        """Generation node for one run, or None when no node lies at the requested distance."""
        if self.kind is StartKind.FIXED:
            if not 0 <= self.node < g.node_count:
                raise InvalidParameter(f'start node {self.node} outside [0, {g.node_count})')
            return self.node
        if self.kind is StartKind.RANDOM:
            return int(rng.integers(g.node_count))
        candidates = np.flatnonzero(distances[optimum.host] == self.distance)
        if candidates.size == 0:
            return None
        return int(rng.choice(candidates))

    def to_dict(self):
        return {'kind': self.kind.value, 'node': self.node, 'distance': self.distance}

    @classmethod
    def from_dict(cls, data) -> 'StartPolicy':
        data = dict(data)
        data['kind'] = StartKind(data.get('kind', 'random'))
        return cls(**data)


def _demand_from_dict(data) -> ZipfDemandSpec:
    data = dict(data)
    data['assignment'] = DemandAssignment(data.get('assignment', 'random'))
    return ZipfDemandSpec(**data)


@dataclass(frozen=True)
class ExperimentSpec:
    topology: TopologySpec = field(default_factory=TopologySpec)
    demand: ZipfDemandSpec = field(default_factory=ZipfDemandSpec)
    algorithm: AlgorithmSpec = field(default_factory=AlgorithmSpec)
    runs: int = 20
    seed: int = 0
    start: StartPolicy = field(default_factory=StartPolicy)
    demand_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise InvalidParameter(f'runs must be at least 1, got {self.runs}')
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParameter(f'seed must be a 64-bit unsigned integer, got {self.seed}')
        if self.workers < 1:
            raise InvalidParameter(f'workers must be at least 1, got {self.workers}')
        if self.demand_path and self.topology.is_random:
            raise InvalidParameter('a demand file needs a fixed topology (file, grid or ring)')

    def with_algorithm(self, **changes) -> 'ExperimentSpec':
        return replace(self, algorithm=replace(self.algorithm, **changes))

    def to_dict(self):
        return {
            'topology': self.topology.to_dict(),
            'demand': self.demand.to_dict(),
            'algorithm': self.algorithm.to_dict(),
            'runs': self.runs,
            'seed': self.seed,
            'start': self.start.to_dict(),
            'demand_path': self.demand_path,
            'workers': self.workers,
        }

    @classmethod
    def from_dict(cls, data) -> 'ExperimentSpec':
        """Inverse of :meth:`to_dict`; missing sections take their defaults."""
        try:
            return cls(
                topology=TopologySpec.from_dict(data.get('topology', {})),
                demand=_demand_from_dict(data.get('demand', {})),
                algorithm=AlgorithmSpec.from_dict(data.get('algorithm', {})),
                runs=int(data.get('runs', 20)),
                seed=int(data.get('seed', 0)),
                start=StartPolicy.from_dict(data.get('start', {})),
                demand_path=data.get('demand_path'),
                workers=int(data.get('workers', 1)),
            )
        except (TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InvalidParameter(f'malformed experiment description: {exc}') from exc
