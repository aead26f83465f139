"""
CSV rendering of experiment reports, alpha sweeps and comparison tables
"""
from __future__ import annotations

import csv
import io
from typing import Iterable, Mapping

RUN_FIELDS = ['run', 'seed', 'start', 'final_host', 'c_alg', 'c_opt', 'beta', 'h_m', 'iterations']
SWEEP_FIELDS = ['alpha', 'mean_beta', 'beta_ci', 'mean_h_m', 'h_m_ci', 'subgraph_size']
COMPARISON_FIELDS = ['d_gen', 'runs', 'lom_h_m', 'lom_beta', 'cdsma_h_m', 'cdsma_beta']


def format_value(value) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return format(value, '.12g')
    return str(value)


def _trailer(pairs: Mapping[str, object]) -> str:
    return '# ' + ','.join(f'{key}={format_value(value)}' for key, value in pairs.items()) + '\n'


def _table(fieldnames: list[str], rows: Iterable[Mapping[str, object]]) -> io.StringIO:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: format_value(row.get(key)) for key in fieldnames})
    return buffer


def runs_csv(rows: Iterable[Mapping[str, object]], summary: Mapping[str, object]) -> str:
    """Per-run rows followed by the aggregate comment line.

    ``rows`` hold the :data:`RUN_FIELDS` keys; ``summary`` needs the keys
    ``mean_beta``, ``beta_ci``, ``mean_h_m``, ``h_m_ci`` and ``runs``.
    """
    buffer = _table(RUN_FIELDS, rows)
    buffer.write(_trailer({
        'mean_beta': summary['mean_beta'],
        'ci': summary['beta_ci'],
        'mean_h_m': summary['mean_h_m'],
        'h_m_ci': summary['h_m_ci'],
        'runs': summary['runs'],
    }))
    return buffer.getvalue()


def report_csv(report) -> str:
    return runs_csv((record.to_dict() for record in report.records), report.summary())


def sweep_csv(result) -> str:
    rows = ({
        'alpha': point.alpha,
        'mean_beta': point.mean_beta,
        'beta_ci': point.beta_ci,
        'mean_h_m': point.mean_hops,
        'h_m_ci': point.hops_ci,
        'subgraph_size': point.subgraph_size,
    } for point in result.points)
    buffer = _table(SWEEP_FIELDS, rows)
    buffer.write(_trailer({
        'epsilon': result.epsilon,
        'alpha_eps': 'none' if result.alpha_epsilon is None else result.alpha_epsilon,
        'subgraph_size': 'none' if result.subgraph_size is None else result.subgraph_size,
    }))
    return buffer.getvalue()


def comparison_csv(rows) -> str:
    """One line per D_gen; void entries leave the measurement columns empty."""
    return _table(COMPARISON_FIELDS, ({
        'd_gen': row.d_gen,
        'runs': row.runs,
        'lom_h_m': row.lom_hops,
        'lom_beta': row.lom_beta,
        'cdsma_h_m': row.cdsma_hops,
        'cdsma_beta': row.cdsma_beta,
    } for row in rows)).getvalue()
