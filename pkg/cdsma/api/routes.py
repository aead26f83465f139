"""
API routes for oracle queries and stored experiments
"""
from dataclasses import replace
from pathlib import Path

from flask import Response, jsonify, request, current_app
from sqlalchemy import desc
from cdsma import db
from cdsma.api import bp
from cdsma.errors import InputError, InvariantViolation
from cdsma.experiment import ExperimentSpec, TopologyKind, run_experiment
from cdsma.experiment.runner import build_instance, fixed_inputs, snapshot_labels
from cdsma.graph import summarize
from cdsma.models import Experiment


@bp.errorhandler(InputError)
def input_error(error):
    return jsonify({'error': str(error)}), 400


@bp.errorhandler(OSError)
def unreadable_file(error):
    return jsonify({'error': f'cannot read {error.filename or "input file"}: {error.strerror}'}), 400


@bp.errorhandler(InvariantViolation)
def invariant_violation(error):
    current_app.logger.error(f'Trace verification failed: {error}')
    return jsonify({'error': str(error)}), 500


@bp.errorhandler(404)
def not_found(error):
    return jsonify({'error': 'Experiment not found'}), 404


def _data_path(value):
    """Resolve a client supplied path below DATA_DIR."""
    root = Path(current_app.config['DATA_DIR']).resolve()
    path = (root / value).resolve()
    if not path.is_relative_to(root):
        raise InputError(f'{value} is outside the data directory')
    return str(path)


def _spec_from_request():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise InputError('request body must be a JSON object')
    spec = ExperimentSpec.from_dict(data)
    if spec.topology.kind is TopologyKind.FILE:
        spec = replace(spec, topology=replace(spec.topology, path=_data_path(spec.topology.path)))
    if spec.demand_path:
        spec = replace(spec, demand_path=_data_path(spec.demand_path))
    return spec


@bp.route('/oracle', methods=['POST'])
def oracle():
    """Exact 1-median of the first instance an experiment description generates."""
    spec = _spec_from_request()
    snapshot = spec.topology.load_snapshot() if spec.topology.kind is TopologyKind.FILE else None
    instance = build_instance(spec, 0, *fixed_inputs(spec, snapshot))
    summary = summarize(instance.graph, instance.distances)
    return jsonify({
        'seed': str(instance.seed),
        'topology': summary.to_dict(),
        'optimum': instance.optimum.to_dict(),
        **snapshot_labels(snapshot, instance.optimum),
    })


@bp.route('/experiments', methods=['POST'])
def create_experiment():
    """Run an experiment and store its report."""
    spec = _spec_from_request()
    report = run_experiment(spec)
    experiment = Experiment.from_report(report)
    db.session.add(experiment)
    db.session.commit()

    current_app.logger.info(
        f'Experiment {experiment.id} stored: {experiment.algorithm} on {experiment.topology}, '
        f'mean beta {experiment.mean_beta:.4f}'
    )

    return jsonify({
        'success': True,
        'experiment': experiment.to_dict(include_runs=True)
    }), 201


@bp.route('/experiments', methods=['GET'])
def list_experiments():
    """Stored experiments, newest first."""
    page = request.args.get('page', 1, type=int)
    experiments = Experiment.query.order_by(desc(Experiment.created_at), desc(Experiment.id)).paginate(
        page=page, per_page=current_app.config['EXPERIMENTS_PER_PAGE'], error_out=False
    )
    return jsonify({
        'experiments': [e.to_dict() for e in experiments.items],
        'page': experiments.page,
        'pages': experiments.pages,
        'total': experiments.total
    })


@bp.route('/experiments/<int:experiment_id>', methods=['GET'])
def get_experiment(experiment_id):
    experiment = db.get_or_404(Experiment, experiment_id)
    return jsonify({'experiment': experiment.to_dict(include_runs=True)})


@bp.route('/experiments/<int:experiment_id>/export', methods=['GET'])
def export_experiment(experiment_id):
    """Per-run CSV of a stored experiment."""
    experiment = db.get_or_404(Experiment, experiment_id)
    return Response(
        experiment.to_csv(),
        mimetype='text/csv',
        headers={'Content-Disposition': f'attachment; filename=experiment_{experiment.id}.csv'}
    )


@bp.route('/experiments/<int:experiment_id>', methods=['DELETE'])
def delete_experiment(experiment_id):
    experiment = db.get_or_404(Experiment, experiment_id)
    db.session.delete(experiment)
    db.session.commit()

    current_app.logger.info(f'Experiment {experiment_id} deleted')

    return jsonify({'success': True})
