"""
Service migration algorithms
"""
from .algorithms import (
    DEFAULT_LOM_RADIUS,
    MigrationTrace,
    TraceViolation,
    run_cdsma,
    run_lom,
    verify_trace,
)

__all__ = [
    'DEFAULT_LOM_RADIUS',
    'MigrationTrace',
    'TraceViolation',
    'run_cdsma',
    'run_lom',
    'verify_trace',
]
