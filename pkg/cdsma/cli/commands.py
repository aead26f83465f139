"""
Simulation commands: generate, run, sweep, compare and oracle
"""
import functools
import json

import click
from flask import current_app

from cdsma import db
from cdsma.cli import bp
from cdsma.errors import InputError, InvariantViolation
from cdsma.experiment import (
    AlgorithmName,
    AlgorithmSpec,
    ExperimentSpec,
    StartKind,
    StartPolicy,
    TopologyKind,
    TopologySpec,
    compare_cdsma_lom,
    comparison_csv,
    report_csv,
    run_experiment,
    sweep_alpha,
    sweep_csv,
)
from cdsma.experiment.runner import RunStreams, build_instance, fixed_inputs, run_seed, snapshot_labels
from cdsma.graph import summarize
from cdsma.models import Experiment
from cdsma.topology import (
    DemandAssignment,
    ZipfDemandSpec,
    assign_zipf_demand,
    cluster_size,
    contrast_report,
    save_demand,
    save_edge_list,
)

DEFAULT_ALPHAS = '0.01,0.02,0.03,0.05,0.1,0.2,0.3,0.5,1.0'
DEFAULT_DGEN = '1,3,5,7'


class TraceCheckFailed(click.ClickException):
    """A migration trace failed verification."""

    exit_code = 2


class CommaList(click.ParamType):
    """Comma separated values of one type, e.g. ``0.1,0.2,0.5``."""

    name = 'list'

    def __init__(self, cast):
        self.cast = cast

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return [self.cast(item) for item in value.split(',') if item.strip()]
        except ValueError:
            self.fail(f'{value!r} is not a comma separated list of {self.cast.__name__}', param, ctx)


def reports_errors(command):
    """Map library errors onto exit codes 1 (input) and 2 (invariant)."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except InvariantViolation as exc:
            current_app.logger.error(f'Trace verification failed: {exc}')
            raise TraceCheckFailed(str(exc)) from exc
        except (InputError, OSError) as exc:
            raise click.ClickException(str(exc)) from exc
    return wrapper


def experiment_options(command):
    """Topology, demand, algorithm and repetition flags shared by the commands."""
    options = [
        click.option('--topology', default='ba', show_default=True,
                     help='ba, grid, ring or file:PATH'),
        click.option('--nodes', type=int, default=100, show_default=True),
        click.option('--rows', type=int),
        click.option('--cols', type=int),
        click.option('--ba-m', type=int, help='edges per new Barabasi-Albert node'),
        click.option('--demand-s', type=float, default=0.0, show_default=True, help='Zipf skew'),
        click.option('--cluster-R', 'cluster_radius', type=click.IntRange(1, 2),
                     help='cluster the top demand ranks in a ball of this radius'),
        click.option('--cluster-head', type=int, help='centre of the demand cluster'),
        click.option('--demand-file', type=click.Path(exists=True, dir_okay=False),
                     help='fixed demand for file, grid or ring topologies'),
        click.option('--runs', type=int),
        click.option('--seed', type=int),
        click.option('--workers', type=int),
        click.option('--out', default='-', show_default=True, help='output path, - for stdout'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _configured(value, key):
    """Flag value, or the configured default when the flag was not given."""
    return current_app.config[key] if value is None else value


def _build_spec(options, algorithm=None, start=None):
    config = current_app.config
    ba_m = _configured(options['ba_m'], 'BA_EDGES_PER_NODE')
    topology = TopologySpec.parse(options['topology'], nodes=options['nodes'], rows=options['rows'],
                                  cols=options['cols'], ba_m=ba_m)
    clustered = options['cluster_radius'] is not None or options['cluster_head'] is not None
    demand = ZipfDemandSpec(
        s=options['demand_s'],
        assignment=DemandAssignment.CLUSTERED if clustered else DemandAssignment.RANDOM_PERMUTATION,
        cluster_head=options['cluster_head'],
        cluster_radius=1 if options['cluster_radius'] is None else options['cluster_radius'],
    )
    return ExperimentSpec(
        topology=topology,
        demand=demand,
        algorithm=algorithm or AlgorithmSpec(alpha=config['CDSMA_ALPHA'], radius=config['LOM_RADIUS']),
        runs=_configured(options['runs'], 'EXPERIMENT_RUNS'),
        seed=_configured(options['seed'], 'EXPERIMENT_SEED'),
        start=start or StartPolicy(),
        demand_path=options['demand_file'],
        workers=_configured(options['workers'], 'EXPERIMENT_WORKERS'),
    )


def _emit(text, out):
    with click.open_file(out, 'w', encoding='utf-8') as handle:
        handle.write(text)


@bp.cli.command('generate')
@experiment_options
@click.option('--demand-out', type=click.Path(dir_okay=False), help='also write the demand vector here')
@reports_errors
def generate(demand_out, **options):
    """Write the topology (and demand) of the first run as files."""
    if options['out'] == '-':
        raise click.ClickException('generate needs --out PATH for the edge list')
    spec = _build_spec(options)
    seed = run_seed(spec.seed, 0)
    streams = RunStreams.from_seed(seed)
    labels = None
    mcc_fraction = 1.0
    if spec.topology.kind is TopologyKind.FILE:
        snapshot = spec.topology.load_snapshot()
        graph, labels, mcc_fraction = snapshot.graph, snapshot.original_ids, snapshot.mcc_fraction
    else:
        graph = spec.topology.build(streams.topology)
    save_edge_list(options['out'], graph, labels, comment=f'{spec.topology.describe()} seed={seed}')

    summary = summarize(graph).to_dict()
    summary['mcc_fraction'] = mcc_fraction
    if demand_out:
        demand, cluster = assign_zipf_demand(graph, spec.demand, streams.demand)
        save_demand(demand_out, demand, labels)
        if cluster:
            K = cluster_size(spec.demand.cluster_radius)
            summary['contrast'] = contrast_report(K, spec.demand.s, graph.node_count).to_dict()
    current_app.logger.info(f'Generated {spec.topology.describe()} into {options["out"]}')
    click.echo(json.dumps(summary, sort_keys=True))


@bp.cli.command('run')
@experiment_options
@click.option('--algorithm', type=click.Choice([a.value for a in AlgorithmName]), default='cdsma',
              show_default=True)
@click.option('--alpha', type=float, help='cDSMA subgraph fraction')
@click.option('--lom-R', 'lom_radius', type=int, help='LOM neighbourhood radius')
@click.option('--dgen', type=int, help='start every run this many hops from the optimum')
@click.option('--start-node', type=int, help='start every run at this node')
@click.option('--store', is_flag=True, help='persist the report in the result store')
@reports_errors
def run(algorithm, alpha, lom_radius, dgen, start_node, store, **options):
    """Repeated runs of one algorithm; per-run CSV plus aggregates."""
    algorithm = AlgorithmSpec(
        name=AlgorithmName(algorithm),
        alpha=_configured(alpha, 'CDSMA_ALPHA'),
        radius=_configured(lom_radius, 'LOM_RADIUS'),
    )
    if start_node is not None and dgen is not None:
        raise click.ClickException('--start-node and --dgen are mutually exclusive')
    if start_node is not None:
        start = StartPolicy(StartKind.FIXED, node=start_node)
    elif dgen is not None:
        start = StartPolicy(StartKind.AT_DISTANCE, distance=dgen)
    else:
        start = StartPolicy()
    spec = _build_spec(options, algorithm, start)
    report = run_experiment(spec)
    _emit(report_csv(report), options['out'])

    if store:
        experiment = Experiment.from_report(report)
        db.session.add(experiment)
        db.session.commit()
        click.echo(f'Stored experiment {experiment.id}', err=True)


@bp.cli.command('sweep')
@experiment_options
@click.option('--alphas', type=CommaList(float), default=DEFAULT_ALPHAS, show_default=True)
@click.option('--epsilon', type=float, help='tolerated excess cost')
@reports_errors
def sweep(alphas, epsilon, **options):
    """Mean beta per alpha and the smallest alpha within epsilon of optimal."""
    epsilon = _configured(epsilon, 'SWEEP_EPSILON')
    result = sweep_alpha(_build_spec(options), alphas, epsilon)
    _emit(sweep_csv(result), options['out'])


@bp.cli.command('compare')
@experiment_options
@click.option('--alpha', type=float, help='cDSMA subgraph fraction')
@click.option('--lom-R', 'lom_radius', type=int, help='LOM neighbourhood radius')
@click.option('--dgen', type=CommaList(int), default=DEFAULT_DGEN, show_default=True,
              help='generation distances from the optimum')
@reports_errors
def compare(alpha, lom_radius, dgen, **options):
    """cDSMA against LOM from starts at fixed distances to the optimum."""
    rows = compare_cdsma_lom(
        _build_spec(options),
        _configured(alpha, 'CDSMA_ALPHA'),
        _configured(lom_radius, 'LOM_RADIUS'),
        dgen,
    )
    _emit(comparison_csv(rows), options['out'])


@bp.cli.command('oracle')
@experiment_options
@reports_errors
def oracle(**options):
    """Exact 1-median of the first generated (or loaded) instance."""
    spec = _build_spec(options)
    snapshot = spec.topology.load_snapshot() if spec.topology.kind is TopologyKind.FILE else None
    instance = build_instance(spec, 0, *fixed_inputs(spec, snapshot))
    result = {
        'seed': str(instance.seed),
        'topology': summarize(instance.graph, instance.distances).to_dict(),
        **instance.optimum.to_dict(),
        **snapshot_labels(snapshot, instance.optimum),
    }
    _emit(json.dumps(result, sort_keys=True) + '\n', options['out'])
