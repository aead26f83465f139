"""
Flask Application Factory
"""
import os
import logging
from logging.handlers import RotatingFileHandler
from flask import Flask
from flask_sqlalchemy import SQLAlchemy
from config import config

db = SQLAlchemy()


def _log_handler(app):
    """Stream handler when LOG_TO_STDOUT is set, rotating file otherwise."""
    if app.config['LOG_TO_STDOUT']:
        handler = logging.StreamHandler()
    else:
        if not os.path.exists('logs'):
            os.mkdir('logs')
        handler = RotatingFileHandler(
            'logs/cdsma.log',
            maxBytes=10240000,  # 10MB
            backupCount=10
        )
    handler.setFormatter(logging.Formatter(
        '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
    ))
    return handler


def create_app(config_name='default'):
    """Application factory pattern."""
    app = Flask(__name__)
    app.config.from_object(config[config_name])
    config[config_name].init_app(app)

    db.init_app(app)

    from cdsma.api import bp as api_bp
    app.register_blueprint(api_bp, url_prefix='/api')

    from cdsma.cli import bp as cli_bp
    app.register_blueprint(cli_bp)

    if not app.debug and not app.testing:
        level = logging.getLevelName(app.config['LOG_LEVEL'].upper())
        handler = _log_handler(app)
        handler.setLevel(level)
        library_logger = logging.getLogger('cdsma')
        for logger in (app.logger, library_logger):
            logger.addHandler(handler)
            logger.setLevel(level)
        app.logger.info('cDSMA simulation service startup')

    return app


from cdsma import models
