"""
Topology and demand sources: synthetic generators and snapshot files
"""
from .generators import (
    DEFAULT_BA_EDGES,
    ContrastReport,
    DemandAssignment,
    ZipfDemandSpec,
    assign_zipf_demand,
    cluster_size,
    contrast_report,
    gen_barabasi_albert,
    gen_grid,
    gen_ring,
    gen_zipf_demand,
    grid_node,
    grid_position,
    spatial_contrast,
    zipf_weights,
)
from .io import TopologySnapshot, load_demand, load_edge_list, save_demand, save_edge_list

__all__ = [
    'DEFAULT_BA_EDGES',
    'ContrastReport',
    'DemandAssignment',
    'TopologySnapshot',
    'ZipfDemandSpec',
    'assign_zipf_demand',
    'cluster_size',
    'contrast_report',
    'gen_barabasi_albert',
    'gen_grid',
    'gen_ring',
    'gen_zipf_demand',
    'grid_node',
    'grid_position',
    'load_demand',
    'load_edge_list',
    'save_demand',
    'save_edge_list',
    'spatial_contrast',
    'zipf_weights',
]
