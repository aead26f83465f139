"""
Experiment and ExperimentRun models
"""
import json
from datetime import datetime
from cdsma import db
from cdsma.experiment.report import runs_csv
from cdsma.experiment.spec import ExperimentSpec


class Experiment(db.Model):
    """Stored experiment report: parameters plus aggregate accuracy and convergence."""

    __tablename__ = 'experiments'

    id = db.Column(db.Integer, primary_key=True)
    algorithm = db.Column(db.String(40), nullable=False)
    topology = db.Column(db.String(200), nullable=False)
    params_json = db.Column(db.Text, nullable=False)
    mean_beta = db.Column(db.Float, nullable=False)
    beta_ci = db.Column(db.Float, nullable=False)
    mean_hops = db.Column(db.Float, nullable=False)
    hops_ci = db.Column(db.Float, nullable=False)
    mean_iterations = db.Column(db.Float, nullable=False)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    runs = db.relationship('ExperimentRun', backref='experiment', lazy='dynamic',
                           cascade='all, delete-orphan', order_by='ExperimentRun.run_index')

    def __repr__(self):
        return f'<Experiment {self.id} {self.algorithm} on {self.topology}>'

    @property
    def params(self):
        """Experiment description as a dict."""
        try:
            return json.loads(self.params_json)
        except (json.JSONDecodeError, TypeError):
            return {}

    @params.setter
    def params(self, value):
        self.params_json = json.dumps(value, sort_keys=True)

    @property
    def spec(self):
        return ExperimentSpec.from_dict(self.params)

    @classmethod
    def from_report(cls, report):
        """Unsaved experiment with one ExperimentRun per record."""
        experiment = cls(
            algorithm=report.spec.algorithm.label,
            topology=report.spec.topology.describe(),
            mean_beta=report.mean_beta,
            beta_ci=report.beta_ci,
            mean_hops=report.mean_hops,
            hops_ci=report.hops_ci,
            mean_iterations=report.mean_iterations,
        )
        experiment.params = report.spec.to_dict()
        for record in report.records:
            experiment.runs.append(ExperimentRun(
                run_index=record.run,
                seed=str(record.seed),
                start=record.start,
                final_host=record.final_host,
                c_alg=record.c_alg,
                c_opt=record.c_opt,
                beta=record.beta,
                h_m=record.h_m,
                iterations=record.iterations,
            ))
        return experiment

    def summary(self):
        return {
            'mean_beta': self.mean_beta,
            'beta_ci': self.beta_ci,
            'mean_h_m': self.mean_hops,
            'h_m_ci': self.hops_ci,
            'mean_iterations': self.mean_iterations,
            'runs': self.runs.count(),
        }

    def to_csv(self):
        """Same bytes the ``sim run`` command printed for this report."""
        return runs_csv((run.to_dict() for run in self.runs), self.summary())

    def to_dict(self, include_runs=False):
        data = {
            'id': self.id,
            'algorithm': self.algorithm,
            'topology': self.topology,
            'params': self.params,
            'created_at': self.created_at.isoformat() if self.created_at else None,
            **self.summary(),
        }
        if include_runs:
            data['records'] = [run.to_dict() for run in self.runs]
        return data


class ExperimentRun(db.Model):
    """One randomized run of a stored experiment."""

    __tablename__ = 'experiment_runs'

    id = db.Column(db.Integer, primary_key=True)
    experiment_id = db.Column(db.Integer, db.ForeignKey('experiments.id'), nullable=False)
    run_index = db.Column(db.Integer, nullable=False)
    seed = db.Column(db.String(20), nullable=False)  # uint64 exceeds SQLite INTEGER
    start = db.Column(db.Integer, nullable=False)
    final_host = db.Column(db.Integer, nullable=False)
    c_alg = db.Column(db.Float, nullable=False)
    c_opt = db.Column(db.Float, nullable=False)
    beta = db.Column(db.Float, nullable=False)
    h_m = db.Column(db.Integer, nullable=False)
    iterations = db.Column(db.Integer, nullable=False)

    def __repr__(self):
        return f'<ExperimentRun {self.run_index} of Experiment {self.experiment_id}>'

    def to_dict(self):
        return {
            'run': self.run_index,
            'seed': self.seed,
            'start': self.start,
            'final_host': self.final_host,
            'c_alg': self.c_alg,
            'c_opt': self.c_opt,
            'beta': self.beta,
            'h_m': self.h_m,
            'iterations': self.iterations,
        }
