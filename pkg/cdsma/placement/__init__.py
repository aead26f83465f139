"""
Service placement: subgraph selection, demand mapping and 1-median solving
"""
from .mapping import (
    EffectiveDemand,
    Subgraph,
    map_demand,
    neighborhood_subgraph,
    select_subgraph,
    subgraph_quota,
)
from .median import PlacementResult, access_cost, solve_1median_exact, solve_1median_subgraph

__all__ = [
    'EffectiveDemand',
    'PlacementResult',
    'Subgraph',
    'access_cost',
    'map_demand',
    'neighborhood_subgraph',
    'select_subgraph',
    'solve_1median_exact',
    'solve_1median_subgraph',
    'subgraph_quota',
]
