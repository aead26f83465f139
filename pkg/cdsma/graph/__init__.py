"""
Graph primitives
"""
from .core import (
    Graph,
    ShortestPathField,
    TopologySummary,
    bfs_distances,
    build_graph,
    enumerate_shortest_paths,
    hop_distance_matrix,
    maximal_connected_component,
    shortest_path_field,
    summarize,
)

__all__ = [
    'Graph',
    'ShortestPathField',
    'TopologySummary',
    'bfs_distances',
    'build_graph',
    'enumerate_shortest_paths',
    'hop_distance_matrix',
    'maximal_connected_component',
    'shortest_path_field',
    'summarize',
]
