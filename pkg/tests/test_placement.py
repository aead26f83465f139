import math

import networkx as nx
import numpy as np
import pytest

from cdsma.errors import InvalidDemand, InvalidParameter, NodeIdOutOfRange
from cdsma.graph import build_graph, hop_distance_matrix, shortest_path_field
from cdsma.metrics import DemandVector
from cdsma.placement import (
    Subgraph,
    access_cost,
    map_demand,
    neighborhood_subgraph,
    select_subgraph,
    solve_1median_exact,
    solve_1median_subgraph,
    subgraph_quota,
)
from cdsma.topology import gen_barabasi_albert, gen_grid
from tests.oracles import from_networkx, mapped_by_paths, median_by_scan, random_connected_graphs


@pytest.fixture
def path4():
    return build_graph([(0, 1), (1, 2), (2, 3)], 4)


@pytest.mark.parametrize('alpha, n, quota', [
    (0.1, 100, 10), (0.3, 10, 3), (0.34, 3, 2), (0.01, 50, 1), (1.0, 7, 7), (0.047, 76, 4),
])
def test_quota(alpha, n, quota):
    assert subgraph_quota(alpha, n) == quota


@pytest.mark.parametrize('alpha', [0.0, -0.1, 1.5, math.nan])
def test_quota_rejects_alpha_outside_unit_interval(alpha):
    with pytest.raises(InvalidParameter):
        subgraph_quota(alpha, 10)


def test_select_whole_graph(path4):
    sub = select_subgraph(path4, DemandVector.uniform(4), 1, 1.0)
    assert sub.members == frozenset(range(4))


def test_select_top_wcbc_on_path(path3):
    sub = select_subgraph(path3, DemandVector.uniform(3), 2, 0.34)
    assert sub.members == {0, 1, 2}
    assert sub.host == 2


def test_select_always_keeps_host(star5):
    # the host has wCBC 0 and would never rank in the top 2 otherwise
    sub = select_subgraph(star5, DemandVector.uniform(5), 3, 0.4)
    assert 3 in sub
    assert 0 in sub


def test_raising_alpha_never_drops_members():
    rng = np.random.default_rng(77)
    alphas = [0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0]
    for G in random_connected_graphs(100, seed=53):
        g = from_networkx(G)
        w = DemandVector(rng.exponential(size=g.node_count))
        host = int(rng.integers(g.node_count))
        field = shortest_path_field(g, host)
        members = [select_subgraph(g, w, host, alpha, field).members for alpha in alphas]
        for smaller, larger in zip(members, members[1:]):
            assert smaller <= larger
        assert members[-1] == frozenset(g.nodes)


def test_subgraph_requires_host():
    with pytest.raises(ValueError):
        Subgraph(members=frozenset({1, 2}), host=0)


def test_neighborhood(path4):
    sub = neighborhood_subgraph(path4, 0, 2)
    assert sub.members == {0, 1, 2}
    assert sub.radius == 2
    with pytest.raises(InvalidParameter):
        neighborhood_subgraph(path4, 0, 0)
    with pytest.raises(NodeIdOutOfRange):
        neighborhood_subgraph(path4, 9, 1)


def test_mapping_on_path(path4):
    sub = Subgraph(members=frozenset({2, 3}), host=3)
    eff = map_demand(path4, DemandVector.uniform(4), sub)
    assert eff.nodes == (2, 3)
    assert eff.mapped(2) == 2.0
    assert eff.mapped(3) == 0.0
    assert eff.w_eff.tolist() == [3.0, 1.0]


def test_mapping_credits_only_the_entry_node():
    # outside node 0 reaches host 4 through 1 then 2 or 3; only 1 is credited
    g = build_graph([(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)], 5)
    w = DemandVector([7.0, 1.0, 1.0, 1.0, 1.0])
    eff = map_demand(g, w, Subgraph(members=frozenset({1, 2, 3, 4}), host=4))
    assert eff.as_dict() == {1: 8.0, 2: 1.0, 3: 1.0, 4: 1.0}


def test_mapping_splits_over_entry_nodes(cycle4):
    eff = map_demand(cycle4, DemandVector([1.0, 1.0, 4.0, 1.0]), Subgraph(frozenset({0, 1, 3}), host=0))
    assert eff.mapped(1) == 2.0
    assert eff.mapped(3) == 2.0
    assert eff.mapped(0) == 0.0


def test_mapping_with_everything_inside(cycle4):
    w = DemandVector([1.0, 2.0, 3.0, 4.0])
    eff = map_demand(cycle4, w, Subgraph(frozenset(range(4)), host=1))
    assert eff.w_map.tolist() == [0.0] * 4
    assert eff.w_eff.tolist() == w.tolist()


def test_mapping_rejects_field_for_other_host(cycle4):
    with pytest.raises(InvalidParameter):
        map_demand(cycle4, DemandVector.uniform(4), Subgraph(frozenset({0, 1}), host=0),
                   shortest_path_field(cycle4, 1))


def test_mapping_matches_path_enumeration():
    rng = np.random.default_rng(99)
    for G in random_connected_graphs(150, seed=23):
        g = from_networkx(G)
        n = g.node_count
        weights = rng.exponential(size=n)
        host = int(rng.integers(n))
        members = select_subgraph(g, DemandVector(weights), host, float(rng.uniform(0.05, 1.0))).members
        eff = map_demand(g, DemandVector(weights), Subgraph(members, host))
        expected = mapped_by_paths(G, weights, members, host)
        for node in members:
            assert eff.mapped(node) == pytest.approx(expected[node], rel=1e-9, abs=1e-12)


def test_mapping_conserves_total_demand():
    rng = np.random.default_rng(314)
    for instance in range(1000):
        if instance % 3 == 0:
            g = gen_barabasi_albert(int(rng.integers(10, 60)), int(rng.integers(1, 4)), rng)
        elif instance % 3 == 1:
            g = gen_grid(int(rng.integers(2, 8)), int(rng.integers(2, 8)))
        else:
            g = from_networkx(next(random_connected_graphs(1, seed=instance)))
        w = DemandVector(rng.exponential(size=g.node_count) * rng.integers(0, 2, size=g.node_count)
                         + np.eye(1, g.node_count, 0).ravel())
        host = int(rng.integers(g.node_count))
        sub = select_subgraph(g, w, host, float(rng.uniform(0.01, 1.0)))
        eff = map_demand(g, w, sub)
        assert abs(eff.total - w.total) <= 1e-9 * max(1.0, w.total)


def test_access_cost_examples(star5, path3):
    assert access_cost(star5, DemandVector.uniform(5), 0) == 4.0
    assert access_cost(path3, DemandVector([10.0, 1.0, 1.0]), 0) == 3.0


def test_access_cost_zero_only_when_demand_is_at_host(path3):
    assert access_cost(path3, DemandVector([0.0, 2.0, 0.0]), 1) == 0.0
    assert access_cost(path3, DemandVector([0.0, 2.0, 0.1]), 1) > 0.0


def test_access_cost_checks_length(path3):
    with pytest.raises(InvalidDemand):
        access_cost(path3, DemandVector.uniform(2), 0)


def test_exact_median_on_path(path3, rng):
    result = solve_1median_exact(path3, DemandVector.uniform(3), rng)
    assert (result.host, result.cost, result.tie_set) == (1, 2.0, frozenset({1}))
    heavy = solve_1median_exact(path3, DemandVector([10.0, 1.0, 1.0]), rng)
    assert (heavy.host, heavy.cost) == (0, 3.0)


def test_exact_median_picks_randomly_among_ties(cycle4):
    hosts = {
        solve_1median_exact(cycle4, DemandVector.uniform(4), np.random.default_rng(seed)).host
        for seed in range(40)
    }
    assert hosts == {0, 1, 2, 3}


def test_exact_median_matches_scan():
    rng = np.random.default_rng(8)
    for G in random_connected_graphs(60, seed=29):
        g = from_networkx(G)
        weights = rng.integers(0, 5, size=g.node_count).astype(float)
        weights[0] += 1
        result = solve_1median_exact(g, DemandVector(weights), rng)
        cost, ties = median_by_scan(G, weights)
        assert result.cost == pytest.approx(cost)
        assert result.tie_set == ties
        assert result.host in ties


@pytest.mark.parametrize('c', [0.25, 3.0, 1024.0])
def test_median_is_invariant_under_demand_scaling(c):
    rng = np.random.default_rng(12)
    for G in random_connected_graphs(40, seed=61):
        g = from_networkx(G)
        w = DemandVector(rng.integers(1, 5, size=g.node_count).astype(float))
        base = solve_1median_exact(g, w, np.random.default_rng(0))
        scaled = solve_1median_exact(g, w.scaled(c), np.random.default_rng(0))
        assert scaled.cost == base.cost * c
        assert scaled.tie_set == base.tie_set
        assert scaled.host == base.host


def test_subgraph_median_on_path(path4, rng):
    sub = Subgraph(frozenset({2, 3}), host=3)
    eff = map_demand(path4, DemandVector.uniform(4), sub)
    result = solve_1median_subgraph(path4, sub, eff, rng)
    assert (result.host, result.cost) == (2, 1.0)


def test_subgraph_median_over_everything_equals_exact(rng):
    G = nx.convert_node_labels_to_integers(nx.grid_2d_graph(4, 5))
    g = from_networkx(G)
    w = DemandVector(np.arange(1, 21, dtype=float))
    sub = Subgraph(frozenset(g.nodes), host=0)
    eff = map_demand(g, w, sub)
    D = hop_distance_matrix(g)
    local = solve_1median_subgraph(g, sub, eff, rng, D)
    exact = solve_1median_exact(g, w, rng, D)
    assert local.cost == exact.cost
    assert local.tie_set == exact.tie_set


def test_subgraph_median_of_lone_host(path3, rng):
    sub = Subgraph(frozenset({1}), host=1)
    eff = map_demand(path3, DemandVector.uniform(3), sub)
    assert solve_1median_subgraph(path3, sub, eff, rng).host == 1
    assert eff.effective(1) == 3.0
