"""
Repeated randomized runs: accuracy, convergence, alpha sweeps and the LOM comparison
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat

import numpy as np

from cdsma.errors import InvalidParameter, InvariantViolation
from cdsma.graph.core import Graph, hop_distance_matrix
from cdsma.metrics.centrality import DemandVector
from cdsma.migration.algorithms import MigrationTrace, run_cdsma, run_lom, verify_trace
from cdsma.placement.mapping import subgraph_quota
from cdsma.placement.median import PlacementResult, solve_1median_exact
from cdsma.topology.generators import gen_zipf_demand
from cdsma.topology.io import TopologySnapshot, load_demand
from cdsma.experiment.spec import AlgorithmName, ExperimentSpec, TopologyKind

logger = logging.getLogger(__name__)

CONFIDENCE_Z = 1.96


def run_seed(master: int, index: int) -> int:
    """Seed of run ``index``; independent of how many runs the experiment has."""
    state = np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def confidence_halfwidth(values) -> float:
    """Half-width of the normal-approximation 95% confidence interval of the mean."""
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        return 0.0
    return float(CONFIDENCE_Z * values.std(ddof=1) / math.sqrt(values.size))


@dataclass(frozen=True)
class RunStreams:
    """Independent generators for each random choice made in one run."""

    topology: np.random.Generator
    demand: np.random.Generator
    oracle: np.random.Generator
    start: np.random.Generator
    algorithm: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> 'RunStreams':
        children = np.random.SeedSequence(seed).spawn(5)
        return cls(*(np.random.default_rng(child) for child in children))


@dataclass(frozen=True)
class Instance:
    graph: Graph
    demand: DemandVector
    distances: np.ndarray
    optimum: PlacementResult
    streams: RunStreams
    seed: int


@dataclass(frozen=True)
class RunRecord:
    run: int
    seed: int
    start: int
    final_host: int
    c_alg: float
    c_opt: float
    beta: float
    h_m: int
    iterations: int
    subgraph_size: float

    def to_dict(self):
        return {
            'run': self.run,
            'seed': str(self.seed),
            'start': self.start,
            'final_host': self.final_host,
            'c_alg': self.c_alg,
            'c_opt': self.c_opt,
            'beta': self.beta,
            'h_m': self.h_m,
            'iterations': self.iterations,
        }


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    records: list[RunRecord]
    mean_beta: float
    beta_ci: float
    mean_hops: float
    hops_ci: float
    mean_iterations: float

    @classmethod
    def from_records(cls, spec: ExperimentSpec, records: list[RunRecord]) -> 'ExperimentReport':
        betas = [r.beta for r in records]
        hops = [r.h_m for r in records]
        return cls(
            spec=spec,
            records=list(records),
            mean_beta=float(np.mean(betas)),
            beta_ci=confidence_halfwidth(betas),
            mean_hops=float(np.mean(hops)),
            hops_ci=confidence_halfwidth(hops),
            mean_iterations=float(np.mean([r.iterations for r in records])),
        )

    @property
    def mean_subgraph_size(self) -> float:
        return float(np.mean([r.subgraph_size for r in self.records]))

    def summary(self):
        return {
            'mean_beta': self.mean_beta,
            'beta_ci': self.beta_ci,
            'mean_h_m': self.mean_hops,
            'h_m_ci': self.hops_ci,
            'mean_iterations': self.mean_iterations,
            'runs': len(self.records),
        }


def beta_ratio(c_alg: float, c_opt: float) -> float:
    if c_opt > 0:
        return c_alg / c_opt
    return 1.0 if c_alg == 0 else math.inf


def fixed_inputs(spec: ExperimentSpec,
                 snapshot: TopologySnapshot | None = None) -> tuple[Graph | None, DemandVector | None]:
    """Topology and demand shared by every run when the experiment fixes them."""
    if spec.topology.is_random:
        return None, None
    labels = None
    if spec.topology.kind is TopologyKind.FILE:
        snapshot = snapshot or spec.topology.load_snapshot()
        graph, labels = snapshot.graph, snapshot.original_ids
    else:
        graph = spec.topology.build()
    demand = None
    if spec.demand_path:
        demand = load_demand(spec.demand_path, graph.node_count, labels)
    return graph, demand


def snapshot_labels(snapshot: TopologySnapshot | None, optimum: PlacementResult) -> dict:
    """File labels of an optimum on a loaded topology; empty for generated ones."""
    if snapshot is None:
        return {}
    return {
        'snapshot': snapshot.to_dict(),
        'host_label': snapshot.label(optimum.host),
        'tie_labels': [snapshot.label(u) for u in sorted(optimum.tie_set)],
    }


def build_instance(spec: ExperimentSpec, index: int, graph: Graph | None = None,
                   demand: DemandVector | None = None) -> Instance:
    seed = run_seed(spec.seed, index)
    streams = RunStreams.from_seed(seed)
    if graph is None:
        graph = spec.topology.build(streams.topology)
    if demand is None:
        demand = gen_zipf_demand(graph, spec.demand, streams.demand)
    distances = hop_distance_matrix(graph)
    optimum = solve_1median_exact(graph, demand, streams.oracle, distances)
    return Instance(graph, demand, distances, optimum, streams, seed)


def _checked(trace: MigrationTrace, g: Graph, context: str) -> MigrationTrace:
    violations = verify_trace(trace, g)
    if violations:
        raise InvariantViolation(violations, context)
    return trace


def _record(index: int, instance: Instance, start: int, trace: MigrationTrace) -> RunRecord:
    c_opt = instance.optimum.cost
    return RunRecord(
        run=index,
        seed=instance.seed,
        start=start,
        final_host=trace.final_host,
        c_alg=trace.final_global_cost,
        c_opt=c_opt,
        beta=beta_ratio(trace.final_global_cost, c_opt),
        h_m=trace.hop_count,
        iterations=trace.iterations,
        subgraph_size=float(np.mean([len(s) for s in trace.subgraphs])),
    )


def execute_run(spec: ExperimentSpec, index: int, graph: Graph | None = None,
                demand: DemandVector | None = None) -> RunRecord:
    """One run: instance, start node, migration, verification and cost ratio."""
    instance = build_instance(spec, index, graph, demand)
    start = spec.start.choose(instance.graph, instance.distances, instance.optimum,
                              instance.streams.start)
    if start is None:
        raise InvalidParameter(
            f'run {index}: no node lies {spec.start.distance} hops from the optimum'
        )
    trace = spec.algorithm.run(instance.graph, instance.demand, start,
                               instance.streams.algorithm, instance.distances)
    _checked(trace, instance.graph, f'run {index}')
    return _record(index, instance, start, trace)


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run ``spec.runs`` independent runs and aggregate beta and h_m."""
    graph, demand = fixed_inputs(spec)
    indices = range(spec.runs)
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            records = list(pool.map(execute_run, repeat(spec), indices, repeat(graph), repeat(demand)))
    else:
        records = [execute_run(spec, i, graph, demand) for i in indices]
    report = ExperimentReport.from_records(spec, records)
    logger.info(
        '%s on %s, s=%g: mean beta %.4f +/- %.4f, mean h_m %.2f over %d runs',
        spec.algorithm.label, spec.topology.describe(), spec.demand.s,
        report.mean_beta, report.beta_ci, report.mean_hops, spec.runs,
    )
    return report


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    mean_beta: float
    beta_ci: float
    mean_hops: float
    hops_ci: float
    subgraph_size: int


@dataclass
class SweepResult:
    epsilon: float
    points: list[SweepPoint] = field(default_factory=list)

    @property
    def alpha_epsilon_point(self) -> SweepPoint | None:
        for point in self.points:
            if point.mean_beta <= 1 + self.epsilon:
                return point
        return None

    @property
    def alpha_epsilon(self) -> float | None:
        point = self.alpha_epsilon_point
        return point.alpha if point else None

    @property
    def subgraph_size(self) -> int | None:
        point = self.alpha_epsilon_point
        return point.subgraph_size if point else None


def sweep_alpha(spec: ExperimentSpec, alphas, epsilon: float) -> SweepResult:
    """Beta curve over ``alphas`` and the smallest alpha within ``epsilon`` of optimal.

    Every alpha replays the same run seeds, so the curve compares like with like.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise InvalidParameter('alpha sweep needs at least one alpha')
    if alphas != sorted(alphas):
        raise InvalidParameter('alphas must be sorted ascending')
    if epsilon < 0:
        raise InvalidParameter(f'epsilon must be non-negative, got {epsilon}')

    result = SweepResult(epsilon=epsilon)
    for alpha in alphas:
        report = run_experiment(spec.with_algorithm(name=AlgorithmName.CDSMA, alpha=alpha))
        result.points.append(SweepPoint(
            alpha=alpha,
            mean_beta=report.mean_beta,
            beta_ci=report.beta_ci,
            mean_hops=report.mean_hops,
            hops_ci=report.hops_ci,
            subgraph_size=math.ceil(report.mean_subgraph_size),
        ))
    if result.alpha_epsilon is None:
        logger.warning('no alpha in %s brings mean beta within %g of optimal', alphas, epsilon)
    return result


@dataclass(frozen=True)
class ComparisonRow:
    """Mean h_m and beta of LOM and cDSMA for services generated D_gen hops from the optimum."""

    d_gen: int
    runs: int
    lom_hops: float | None = None
    lom_beta: float | None = None
    cdsma_hops: float | None = None
    cdsma_beta: float | None = None

    @property
    def void(self) -> bool:
        return self.runs == 0


def compare_cdsma_lom(spec: ExperimentSpec, alpha: float, radius: int, d_gen_list) -> list[ComparisonRow]:
    """Run cDSMA and LOM from the same generation nodes at each D_gen.

    A run contributes to a D_gen entry only if some node lies exactly D_gen
    hops from its designated optimum; entries with no such run are void.
    """
    d_gen_list = [int(d) for d in d_gen_list]
    if any(d < 0 for d in d_gen_list):
        raise InvalidParameter('D_gen values must be non-negative')
    if radius < 1:
        raise InvalidParameter(f'LOM radius must be at least 1, got {radius}')
    subgraph_quota(alpha, 1)
    graph, demand = fixed_inputs(spec)
    outcomes = {d: {'lom': [], 'cdsma': []} for d in d_gen_list}

    for index in range(spec.runs):
        instance = build_instance(spec, index, graph, demand)
        g = instance.graph
        for d in d_gen_list:
            candidates = np.flatnonzero(instance.distances[instance.optimum.host] == d)
            if candidates.size == 0:
                continue
            rng = np.random.default_rng([instance.seed, d])
            start = int(rng.choice(candidates))
            cdsma = run_cdsma(g, instance.demand, start, alpha,
                              np.random.default_rng([instance.seed, d, 1]), instance.distances)
            lom = run_lom(g, instance.demand, start, radius,
                          np.random.default_rng([instance.seed, d, 2]), instance.distances)
            for name, trace in (('cdsma', cdsma), ('lom', lom)):
                _checked(trace, g, f'run {index}, D_gen={d}, {name}')
                outcomes[d][name].append(
                    (trace.hop_count, beta_ratio(trace.final_global_cost, instance.optimum.cost))
                )

    rows = []
    for d in d_gen_list:
        lom, cdsma = outcomes[d]['lom'], outcomes[d]['cdsma']
        if not lom:
            logger.warning('D_gen=%d is void: no node that far from the optimum in any run', d)
            rows.append(ComparisonRow(d_gen=d, runs=0))
            continue
        rows.append(ComparisonRow(
            d_gen=d,
            runs=len(lom),
            lom_hops=float(np.mean([h for h, _ in lom])),
            lom_beta=float(np.mean([b for _, b in lom])),
            cdsma_hops=float(np.mean([h for h, _ in cdsma])),
            cdsma_beta=float(np.mean([b for _, b in cdsma])),
        ))
    return rows


__all__ = [
    'ComparisonRow',
    'ExperimentReport',
    'Instance',
    'RunRecord',
    'RunStreams',
    'SweepPoint',
    'SweepResult',
    'beta_ratio',
    'build_instance',
    'compare_cdsma_lom',
    'confidence_halfwidth',
    'execute_run',
    'fixed_inputs',
    'run_experiment',
    'run_seed',
    'snapshot_labels',
    'sweep_alpha',
]
