"""
Brute-force references built on networkx path enumeration
"""
import itertools

import networkx as nx
import numpy as np

from cdsma.graph import build_graph


def from_networkx(G):
    return build_graph(list(G.edges()), G.number_of_nodes())


def small_connected_graphs(max_nodes=7):
    """Every connected graph of the networkx atlas with 2..max_nodes nodes."""
    for G in nx.graph_atlas_g():
        if 2 <= G.number_of_nodes() <= max_nodes and nx.is_connected(G):
            yield G


def random_connected_graphs(count, max_nodes=9, seed=7):
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < count:
        n = int(rng.integers(2, max_nodes + 1))
        G = nx.gnp_random_graph(n, float(rng.uniform(0.2, 0.8)), seed=int(rng.integers(2 ** 31)))
        if nx.is_connected(G):
            produced += 1
            yield G


def families(max_nodes=9):
    for n in range(2, max_nodes + 1):
        yield nx.path_graph(n)
        yield nx.star_graph(n - 1)
        if n >= 3:
            yield nx.cycle_graph(n)


def wcbc_by_paths(G, weights, t):
    """Demand each source pushes through each node, over enumerated shortest paths."""
    values = np.zeros(G.number_of_nodes())
    for s in G.nodes:
        if s == t:
            continue
        paths = list(nx.all_shortest_paths(G, s, t))
        for path in paths:
            for u in path[:-1]:
                values[u] += weights[s] / len(paths)
    return values


def mapped_by_paths(G, weights, members, host):
    """Outside demand credited to the first member met on each shortest path."""
    mapped = dict.fromkeys(members, 0.0)
    for s in G.nodes:
        if s in members:
            continue
        paths = list(nx.all_shortest_paths(G, s, host))
        for path in paths:
            entry = next(u for u in path if u in members)
            mapped[entry] += weights[s] / len(paths)
    return mapped


def median_by_scan(G, weights):
    lengths = dict(nx.all_pairs_shortest_path_length(G))
    costs = {k: sum(weights[n] * lengths[k][n] for n in G.nodes) for k in G.nodes}
    best = min(costs.values())
    return best, {k for k, c in costs.items() if np.isclose(c, best, rtol=0, atol=1e-12)}


def shortest_path_count(G, s, t):
    return sum(1 for _ in nx.all_shortest_paths(G, s, t))


def pairs(G):
    return itertools.product(G.nodes, repeat=2)
