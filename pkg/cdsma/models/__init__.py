"""
Database models package
"""
from .experiment import Experiment, ExperimentRun

__all__ = ['Experiment', 'ExperimentRun']
