import networkx as nx
import numpy as np
import pytest

from cdsma.errors import DisconnectedGraph, EmptyGraph, NodeIdOutOfRange, SelfLoop
from cdsma.graph import (
    Graph,
    build_graph,
    enumerate_shortest_paths,
    hop_distance_matrix,
    maximal_connected_component,
    shortest_path_field,
    summarize,
)
from cdsma.topology import gen_grid, gen_ring
from tests.oracles import from_networkx, random_connected_graphs, shortest_path_count, small_connected_graphs


def test_build_path_graph(path3):
    assert path3.node_count == 3
    assert path3.adjacency == ((1,), (0, 2), (1,))
    assert list(path3.edges()) == [(0, 1), (1, 2)]


def test_duplicate_edges_collapse():
    g = build_graph([(0, 1), (0, 1), (1, 0)], 2)
    assert g.edge_count == 1


def test_disconnected_input_rejected():
    with pytest.raises(DisconnectedGraph) as info:
        build_graph([(0, 1)], 3)
    assert info.value.unreachable == (2,)


def test_disconnected_input_reduced_on_request():
    g = build_graph([(0, 1), (1, 2), (3, 4)], 5, extract_mcc=True)
    assert g.node_count == 3


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_graph([(0, 1), (1, 1)], 2)


def test_out_of_range_rejected():
    with pytest.raises(NodeIdOutOfRange):
        build_graph([(0, 3)], 3)


def test_empty_graph_rejected():
    with pytest.raises(EmptyGraph):
        build_graph([], 0)


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValueError):
        Graph(2, ((1,), ()))


def test_input_errors_are_value_errors():
    with pytest.raises(ValueError):
        build_graph([(0, 0)], 1)


def test_field_on_path(path3):
    field = shortest_path_field(path3, 2)
    assert field.dist.tolist() == [2, 1, 0]
    assert field.sigma.tolist() == [1, 1, 1]
    assert field.preds == ((1,), (2,), ())


def test_field_on_four_cycle(cycle4):
    field = shortest_path_field(cycle4, 2)
    assert field.dist[0] == 2
    assert field.sigma[0] == 2
    assert field.preds[0] == (1, 3)


def test_field_on_two_by_two_grid():
    g = gen_grid(2, 2)
    field = shortest_path_field(g, 0)
    assert field.sigma[3] == 2


def test_field_order_is_farthest_first(cycle4):
    field = shortest_path_field(cycle4, 0)
    assert field.order == (2, 1, 3, 0)


def test_field_arrays_are_read_only(path3):
    field = shortest_path_field(path3, 0)
    with pytest.raises(ValueError):
        field.sigma[0] = 5


@pytest.mark.parametrize('G', list(small_connected_graphs(6)) + list(random_connected_graphs(100)),
                         ids=lambda G: f'n{G.number_of_nodes()}e{G.number_of_edges()}')
def test_sigma_matches_path_enumeration(G):
    g = from_networkx(G)
    for t in g.nodes:
        field = shortest_path_field(g, t)
        assert field.dist[t] == 0 and field.sigma[t] == 1
        for u in g.nodes:
            if u == t:
                continue
            assert field.sigma[u] == shortest_path_count(G, u, t)
            assert field.sigma[u] == sum(field.sigma[p] for p in field.preds[u])
            assert all(field.dist[p] == field.dist[u] - 1 for p in field.preds[u])
            assert len(enumerate_shortest_paths(field, u)) == field.sigma[u]


def test_large_counts_switch_to_floats(caplog):
    # 40x40 lattice: corner-to-corner count is C(78, 39) > 2**63
    g = gen_grid(40, 40)
    field = shortest_path_field(g, 0)
    assert field.approximate_counts
    assert field.sigma.dtype == np.float64
    assert 'exceed 64 bits' in caplog.text


def test_small_grid_counts_are_exact():
    field = shortest_path_field(gen_grid(6, 6), 0)
    assert not field.approximate_counts
    assert field.sigma[35] == 252


def test_mcc_keeps_the_largest_component():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7)]
    g, id_map = maximal_connected_component(edges, 8)
    assert g.node_count == 5
    assert id_map == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4}


def test_mcc_identity_on_connected_input(cycle4):
    g, id_map = maximal_connected_component(list(cycle4.edges()), 4)
    assert id_map == {u: u for u in range(4)}
    assert g == cycle4


def test_mcc_tie_goes_to_smallest_id():
    edges = [(4, 5), (5, 6), (6, 7), (0, 1), (1, 2), (2, 3)]
    g, id_map = maximal_connected_component(edges, 8)
    assert sorted(id_map) == [0, 1, 2, 3]


def test_mcc_redensifies_ids():
    edges = [(0, 9), (2, 3), (3, 5), (5, 7)]
    g, id_map = maximal_connected_component(edges, 10)
    assert id_map == {2: 0, 3: 1, 5: 2, 7: 3}
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]


def test_mcc_of_nothing():
    with pytest.raises(EmptyGraph):
        maximal_connected_component([], 0)


def test_distance_matrix_on_path(path3):
    assert hop_distance_matrix(path3).tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_distance_matrix_of_cycle(cycle4):
    assert hop_distance_matrix(cycle4).max() == 2


def test_distance_matrix_of_grid():
    assert hop_distance_matrix(gen_grid(10, 10)).max() == 18


@pytest.mark.parametrize('G', list(random_connected_graphs(30, seed=3)),
                         ids=lambda G: f'n{G.number_of_nodes()}e{G.number_of_edges()}')
def test_distance_matrix_agrees_with_fields(G):
    g = from_networkx(G)
    D = hop_distance_matrix(g)
    assert np.array_equal(D, D.T)
    assert np.all(np.diag(D) == 0)
    for t in g.nodes:
        assert np.array_equal(D[:, t], shortest_path_field(g, t).dist)
    # triangle inequality
    assert np.all(D[:, None, :] <= D[:, :, None] + D[None, :, :])


def test_summary_of_ring():
    summary = summarize(gen_ring(10))
    assert summary.to_dict() == {
        'nodes': 10, 'edges': 10, 'diameter': 5, 'mean_degree': 2.0, 'max_degree': 2,
    }


def test_networkx_round_trip(cycle4):
    G = cycle4.to_networkx()
    assert nx.is_isomorphic(G, nx.cycle_graph(4))
