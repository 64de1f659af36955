import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphforms import graphs
from graphforms.errors import GraphFormatError
from graphforms.complexes import clique_counts

from conftest import brute_isomorphic


def test_build_graph_k1():
    g = graphs.build_graph(1, [])
    assert g.n == 1 and g.m == 0


def test_build_graph_c4():
    g = graphs.build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.m == 4 and all(g.degree(v) == 2 for v in range(4))


def test_build_graph_dedup():
    g = graphs.build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_build_graph_rejects_self_loop():
    with pytest.raises(GraphFormatError, match=r"\(2, 2\)"):
        graphs.build_graph(3, [(2, 2)])


def test_build_graph_rejects_out_of_range():
    with pytest.raises(GraphFormatError, match=r"\(0, 7\)"):
        graphs.build_graph(3, [(0, 7)])


def test_octahedron_edge_count():
    g = graphs.octahedron()
    assert g.n == 6 and g.m == 12
    assert clique_counts(g) == (6, 12, 8)


def test_generate_cycle():
    g = graphs.generate("cycle", 5)
    assert g.n == 5 and g.m == 5


def test_generate_wheel_rejects_small():
    with pytest.raises(GraphFormatError):
        graphs.wheel_graph(2)


def test_icosahedron_counts():
    g = graphs.icosahedron()
    assert g.n == 12 and g.m == 30
    assert all(g.degree(v) == 5 for v in range(12))
    assert clique_counts(g) == (12, 30, 20)


def test_cross_polytope_octahedron():
    assert graphs.cross_polytope(2) == graphs.octahedron()
    g3 = graphs.cross_polytope(3)
    assert g3.n == 8 and g3.m == 24


def test_unit_sphere_octahedron_is_c4():
    g = graphs.octahedron()
    for x in range(6):
        sphere, vmap = graphs.unit_sphere(g, x)
        assert sphere.n == 4 and sphere.m == 4
        assert brute_isomorphic(sphere, graphs.cycle_graph(4))
        assert all(g.adjacent(x, w) for w in vmap)


def test_unit_sphere_k1_empty():
    sphere, vmap = graphs.unit_sphere(graphs.complete_graph(1), 0)
    assert sphere.n == 0 and vmap == ()


def test_unit_sphere_wheel_hub():
    sphere, _ = graphs.unit_sphere(graphs.wheel_graph(6), 0)
    assert brute_isomorphic(sphere, graphs.cycle_graph(6))


def test_cross_polytope_sphere_recursion():
    for d in (1, 2, 3):
        g = graphs.cross_polytope(d)
        lower = graphs.cross_polytope(d - 1)
        for x in range(g.n):
            sphere, _ = graphs.unit_sphere(g, x)
            assert brute_isomorphic(sphere, lower)


def test_induced_subgraph_full():
    g = graphs.octahedron()
    h, vmap = graphs.induced_subgraph(g, range(6))
    assert h == g and vmap == tuple(range(6))


def test_induced_subgraph_path():
    h, _ = graphs.induced_subgraph(graphs.cycle_graph(4), [0, 1, 2])
    assert brute_isomorphic(h, graphs.path_graph(3))


def test_induced_matches_sphere():
    g = graphs.octahedron()
    s1, m1 = graphs.unit_sphere(g, 0)
    s2, m2 = graphs.induced_subgraph(g, g.neighbors(0))
    assert s1 == s2 and m1 == m2


def test_metrics_octahedron():
    met = graphs.metrics(graphs.octahedron())
    assert met.components == 1 and met.diameter == 2
    assert not met.diameter_largest_component_only


def test_metrics_icosahedron_diameter():
    assert graphs.metrics(graphs.icosahedron()).diameter == 3


def test_metrics_complete():
    met = graphs.metrics(graphs.complete_graph(5))
    assert met.diameter == 1 and met.clustering == 1.0 and met.edge_density == 1.0


def test_metrics_disconnected_flag():
    g = graphs.build_graph(5, [(0, 1), (1, 2)])
    met = graphs.metrics(g)
    assert met.components == 3
    assert met.diameter == 2 and met.diameter_largest_component_only


def test_random_er_deterministic():
    a = graphs.random_er(10, 0.4, 7)
    b = graphs.random_er(10, 0.4, 7)
    assert a == b


def test_random_er_extremes():
    assert graphs.random_er(8, 0.0, 1).m == 0
    assert graphs.random_er(8, 1.0, 1).m == 28


def test_random_tree_is_tree():
    for seed in range(5):
        g = graphs.random_tree(7, seed)
        assert g.m == 6 and graphs.is_connected(g)


def test_random_contractible_verdict():
    from graphforms.morse import is_contractible

    for seed in range(8):
        g = graphs.random_contractible(8, seed)
        assert g.n == 8
        assert is_contractible(g).verdict == "yes"


def test_edge_list_round_trip():
    g = graphs.octahedron()
    assert graphs.from_edge_list_text(graphs.to_edge_list_text(g)) == g


def test_json_round_trip():
    g = graphs.wheel_graph(5)
    assert graphs.from_json_text(graphs.to_json_text(g)) == g


def test_edge_list_parse_error_line_number():
    with pytest.raises(GraphFormatError, match="line 2"):
        graphs.from_edge_list_text("2 1\n0 x\n")


def test_edge_list_header_error():
    with pytest.raises(GraphFormatError, match="line 1"):
        graphs.from_edge_list_text("nope\n")


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10**6))
def test_round_trip_random(n, seed):
    g = graphs.random_er(n, 0.5, seed)
    assert graphs.from_edge_list_text(graphs.to_edge_list_text(g)) == g
    assert graphs.from_json_text(graphs.to_json_text(g)) == g
