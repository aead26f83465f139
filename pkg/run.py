#!/usr/bin/env python3
"""
Flask Application Entry Point
"""
import os
from cdsma import create_app, db
from cdsma.models import Experiment, ExperimentRun

app = create_app(os.getenv('FLASK_CONFIG') or 'default')


@app.shell_context_processor
def make_shell_context():
    """Make database models available in flask shell."""
    return {
        'db': db,
        'Experiment': Experiment,
        'ExperimentRun': ExperimentRun
    }


@app.cli.command()
def init_db():
    """Initialize the result store."""
    db.create_all()
    print('Initialized the database.')


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=5000, debug=True)
