"""
Complex-network centrality metrics
"""
from .centrality import (
    CentralityKind,
    CentralityVector,
    DemandVector,
    betweenness_centrality,
    closeness,
    conditional_bc,
    weighted_cbc,
)
from .closed_form import grid_cbc_closed_form, ring_cbc_closed_form

__all__ = [
    'CentralityKind',
    'CentralityVector',
    'DemandVector',
    'betweenness_centrality',
    'closeness',
    'conditional_bc',
    'grid_cbc_closed_form',
    'ring_cbc_closed_form',
    'weighted_cbc',
]
