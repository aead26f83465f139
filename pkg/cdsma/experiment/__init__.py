"""
Experiment descriptions, the repeated-run harness and its CSV output
"""
from cdsma.experiment.spec import (
    AlgorithmName,
    AlgorithmSpec,
    ExperimentSpec,
    StartKind,
    StartPolicy,
    TopologyKind,
    TopologySpec,
)
from cdsma.experiment.runner import (
    ComparisonRow,
    ExperimentReport,
    RunRecord,
    SweepPoint,
    SweepResult,
    beta_ratio,
    compare_cdsma_lom,
    confidence_halfwidth,
    execute_run,
    run_experiment,
    run_seed,
    sweep_alpha,
)
from cdsma.experiment.report import comparison_csv, report_csv, runs_csv, sweep_csv

__all__ = [
    'AlgorithmName',
    'AlgorithmSpec',
    'ComparisonRow',
    'ExperimentReport',
    'ExperimentSpec',
    'RunRecord',
    'StartKind',
    'StartPolicy',
    'SweepPoint',
    'SweepResult',
    'TopologyKind',
    'TopologySpec',
    'beta_ratio',
    'compare_cdsma_lom',
    'comparison_csv',
    'confidence_halfwidth',
    'execute_run',
    'report_csv',
    'run_experiment',
    'run_seed',
    'runs_csv',
    'sweep_csv',
]
