import math

import networkx as nx
import numpy as np
import pytest

from cdsma.errors import InvalidDemand, InvalidParameter, NegativeWeight
from cdsma.graph import shortest_path_field
from cdsma.metrics import (
    CentralityKind,
    DemandVector,
    betweenness_centrality,
    closeness,
    conditional_bc,
    grid_cbc_closed_form,
    ring_cbc_closed_form,
    weighted_cbc,
)
from cdsma.placement import solve_1median_exact
from cdsma.topology import gen_grid, gen_ring, grid_node
from tests.oracles import (
    families,
    from_networkx,
    random_connected_graphs,
    small_connected_graphs,
    wcbc_by_paths,
)


def test_demand_rejects_negative_entries():
    with pytest.raises(NegativeWeight) as info:
        DemandVector([1.0, -0.5, 2.0])
    assert info.value.node == 1


@pytest.mark.parametrize('weights', [[], [0.0, 0.0], [1.0, math.nan], [[1.0, 2.0]]])
def test_demand_rejects_unusable_vectors(weights):
    with pytest.raises(InvalidDemand):
        DemandVector(weights)


def test_demand_is_immutable():
    w = DemandVector([1.0, 2.0])
    with pytest.raises(ValueError):
        w.weights[0] = 3.0
    assert w == DemandVector.from_iterable([1.0, 2.0])
    assert w.total == 3.0
    assert w.scaled(2).tolist() == [2.0, 4.0]


def test_cbc_on_path(path3):
    cbc = conditional_bc(path3, 2)
    assert cbc.kind is CentralityKind.CBC
    # node 1 carries node 0's path and its own
    assert cbc.values.tolist() == [1.0, 2.0, 0.0]


def test_cbc_on_four_cycle(cycle4):
    cbc = conditional_bc(cycle4, 2)
    assert cbc.values.tolist() == [1.0, 1.5, 0.0, 1.5]


def test_wcbc_scales_sources_by_demand(path3):
    w = DemandVector([3.0, 1.0, 5.0])
    assert weighted_cbc(path3, w, 2).values.tolist() == [3.0, 4.0, 0.0]


def test_wcbc_rejects_field_for_other_target(path3):
    field = shortest_path_field(path3, 0)
    with pytest.raises(InvalidParameter):
        weighted_cbc(path3, DemandVector.uniform(3), 2, field)


def test_wcbc_rejects_demand_of_wrong_length(path3):
    with pytest.raises(InvalidDemand):
        weighted_cbc(path3, DemandVector.uniform(4), 0)


def test_ranking_breaks_ties_by_id(cycle4):
    assert conditional_bc(cycle4, 0).ranking() == [1, 3, 2, 0]


def _oracle_cases():
    rng = np.random.default_rng(2024)
    graphs = (list(small_connected_graphs(7)) + list(families(9))
              + list(random_connected_graphs(500, seed=11)))
    for G in graphs:
        weights = rng.exponential(size=G.number_of_nodes())
        t = int(rng.integers(G.number_of_nodes()))
        yield G, weights, t


def test_wcbc_matches_path_enumeration():
    for G, weights, t in _oracle_cases():
        g = from_networkx(G)
        got = weighted_cbc(g, DemandVector(weights), t).values
        expected = wcbc_by_paths(G, weights, t)
        np.testing.assert_allclose(got, expected, rtol=1e-9, atol=1e-12)


def test_wcbc_of_a_node_covers_its_own_demand():
    for G, weights, t in _oracle_cases():
        g = from_networkx(G)
        wcbc = weighted_cbc(g, DemandVector(weights), t).values
        others = [u for u in g.nodes if u != t]
        assert wcbc[t] == 0.0
        assert np.all(wcbc[others] >= weights[others] - 1e-12)


@pytest.mark.parametrize('G', [nx.path_graph(6), nx.cycle_graph(7), nx.star_graph(5),
                               nx.petersen_graph(), nx.grid_2d_graph(4, 3)],
                         ids=['path', 'cycle', 'star', 'petersen', 'grid'])
def test_bc_matches_networkx(G):
    G = nx.convert_node_labels_to_integers(G)
    expected = nx.betweenness_centrality(G, normalized=False)
    bc = betweenness_centrality(from_networkx(G))
    assert bc.kind is CentralityKind.BC
    np.testing.assert_allclose(bc.values, [expected[u] for u in G.nodes], atol=1e-9)


@pytest.mark.parametrize('n', range(2, 21))
def test_bc_on_paths(n):
    bc = betweenness_centrality(from_networkx(nx.path_graph(n)))
    np.testing.assert_allclose(bc.values, [i * (n - 1 - i) for i in range(n)], atol=1e-9)


def test_uniform_demand_reduces_wcbc_to_cbc():
    for G, _, t in _oracle_cases():
        g = from_networkx(G)
        c = 2.5
        wcbc = weighted_cbc(g, DemandVector(np.full(g.node_count, c)), t).values
        np.testing.assert_allclose(wcbc, c * conditional_bc(g, t).values, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize('N', range(3, 50, 2))
def test_ring_closed_form_on_odd_rings(N):
    cbc = conditional_bc(gen_ring(N), 0)
    for d in range(1, N // 2 + 1):
        # node d sits d hops clockwise from the target
        assert abs(cbc[d] - ring_cbc_closed_form(N, d)) <= 1e-9


@pytest.mark.parametrize('N', range(4, 50, 2))
def test_ring_closed_form_on_even_rings_omits_own_path(N):
    cbc = conditional_bc(gen_ring(N), 0)
    for d in range(1, N // 2 + 1):
        assert abs(cbc[d] - ring_cbc_closed_form(N, d) - 1.0) <= 1e-9


def test_ring_closed_form_known_values():
    assert ring_cbc_closed_form(5, 1) == 2.0
    assert ring_cbc_closed_form(6, 3) == 0.0


@pytest.mark.parametrize('args', [(2, 1), (5, 0), (5, 3)])
def test_ring_closed_form_domain(args):
    with pytest.raises(InvalidParameter):
        ring_cbc_closed_form(*args)


@pytest.mark.parametrize('M', range(2, 7))
@pytest.mark.parametrize('N', range(2, 7))
def test_grid_closed_form_matches_accumulation(M, N):
    g = gen_grid(M, N)
    positions = [(row, col) for row in range(1, M + 1) for col in range(1, N + 1)]
    for t in positions:
        cbc = conditional_bc(g, grid_node(N, *t))
        for u in positions:
            if u == t:
                continue
            assert abs(cbc[grid_node(N, *u)] - grid_cbc_closed_form(M, N, u, t)) <= 1e-9


def test_grid_closed_form_on_two_by_two():
    # node (1,1) carries its own path and half of the opposite corner's
    assert grid_cbc_closed_form(2, 2, (1, 1), (1, 2)) == 1.5


def test_grid_closed_form_domain():
    with pytest.raises(InvalidParameter):
        grid_cbc_closed_form(3, 3, (1, 1), (1, 1))
    with pytest.raises(InvalidParameter):
        grid_cbc_closed_form(3, 3, (4, 1), (1, 1))


def test_closeness_peaks_at_uniform_demand_optimum():
    rng = np.random.default_rng(5)
    for G in random_connected_graphs(40, seed=17):
        g = from_networkx(G)
        result = solve_1median_exact(g, DemandVector.uniform(g.node_count), rng)
        scores = closeness(g)
        assert np.isclose(scores[result.host], scores.max())
        expected = nx.closeness_centrality(G)
        np.testing.assert_allclose(scores, [expected[u] for u in G.nodes])
