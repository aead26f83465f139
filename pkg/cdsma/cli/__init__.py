"""
CLI blueprint: the ``sim`` command group
"""
from flask import Blueprint

bp = Blueprint('cli', __name__, cli_group='sim')

from cdsma.cli import commands
