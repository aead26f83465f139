"""
``python -m cdsma sim ...`` without setting FLASK_APP
"""
import os
from flask.cli import FlaskGroup
from cdsma import create_app

cli = FlaskGroup(create_app=lambda: create_app(os.getenv('FLASK_CONFIG') or 'default'))

if __name__ == '__main__':
    cli()
