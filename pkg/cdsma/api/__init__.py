"""
API blueprint for oracle queries and stored experiments
"""
from flask import Blueprint

bp = Blueprint('api', __name__)

from cdsma.api import routes
