import math
from fractions import Fraction

import pytest

from graphforms import graphs
from graphforms.complexes import clique_counts
from graphforms.errors import NotApplicableError
from graphforms.geometry import (
    curvature,
    expected_dimension_polynomial,
    flatness_check,
    induced_cycles,
    inductive_dimension,
    is_geometric,
    poly_eval,
    positive_curvature_report,
    second_order_curvature,
    sectional_and_ricci,
)


def triangular_torus(a=4, b=4):
    """Degree-6 flat triangulated torus on the a x b grid."""
    def vid(i, j):
        return (i % a) * b + (j % b)

    edges = []
    for i in range(a):
        for j in range(b):
            edges.append((vid(i, j), vid(i + 1, j)))
            edges.append((vid(i, j), vid(i, j + 1)))
            edges.append((vid(i, j), vid(i + 1, j + 1)))
    return graphs.build_graph(a * b, edges)


def test_curvature_icosahedron():
    cv = curvature(graphs.icosahedron())
    assert set(cv.values) == {Fraction(1, 6)}
    assert cv.total() == 2


def test_curvature_cycles_flat():
    for n in (4, 6, 9):
        assert set(curvature(graphs.cycle_graph(n)).values) == {Fraction(0)}


def test_curvature_octahedron():
    cv = curvature(graphs.octahedron())
    assert set(cv.values) == {Fraction(1, 3)}
    assert cv.total() == 2
    assert all(fv == (4, 4) for fv in cv.sphere_fvectors)


def test_gauss_bonnet_random():
    for seed in range(10):
        g = graphs.random_er(9, 0.5, seed + 90)
        chi = sum((-1) ** k * v for k, v in enumerate(clique_counts(g))) if g.n else 0
        assert curvature(g).total() == chi


def test_triangle_free_curvature_formula():
    g = graphs.random_tree(9, 5)
    cv = curvature(g)
    for v in range(g.n):
        assert cv.values[v] == 1 - Fraction(g.degree(v), 2)
    assert cv.total() == g.n - g.m


def hex_patch(width=5):
    """Triangular-lattice patch (no wraparound); interior vertices have degree 6."""
    def vid(i, j):
        return i * width + j

    edges = []
    for i in range(width):
        for j in range(width):
            if i + 1 < width:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j + 1 < width:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < width and j + 1 < width:
                edges.append((vid(i, j), vid(i + 1, j + 1)))
    return graphs.build_graph(width * width, edges)


def test_second_order_curvature():
    ico = graphs.icosahedron()
    assert all(second_order_curvature(ico, x) == 5 for x in range(12))
    k5 = graphs.complete_graph(5)
    assert second_order_curvature(k5, 0) == 8
    patch = hex_patch(5)
    center = 2 * 5 + 2
    assert patch.degree(center) == 6
    assert second_order_curvature(patch, center) == 0  # 2*6 - 12


def test_sectional_icosahedron():
    rep = sectional_and_ricci(graphs.icosahedron())
    assert len(rep.wheels) == 12
    assert {w[2] for w in rep.wheels} == {5}
    assert {w[3] for w in rep.wheels} == {Fraction(1, 6)}
    assert set(rep.ricci.values()) == {Fraction(1, 6)}
    assert set(rep.scalar) == {Fraction(1, 6)}


def test_sectional_octahedron():
    rep = sectional_and_ricci(graphs.octahedron())
    assert {w[3] for w in rep.wheels} == {Fraction(1, 3)}


def test_sectional_triangle_free_none():
    rep = sectional_and_ricci(graphs.cycle_graph(6))
    assert rep.wheels == ()
    assert set(rep.ricci.values()) == {None}
    assert set(rep.scalar) == {None}


def test_induced_cycles_wheel_sphere():
    g = graphs.wheel_graph(5)
    sphere, _ = graphs.unit_sphere(g, 0)
    cycles = induced_cycles(sphere)
    assert len(cycles) == 1 and len(cycles[0]) == 5


def test_dimension_complete():
    for n in range(1, 7):
        assert inductive_dimension(graphs.complete_graph(n)).graph == n - 1


def test_dimension_octahedron():
    assert inductive_dimension(graphs.octahedron()).graph == 2


def test_dimension_star():
    dim = inductive_dimension(graphs.star_graph(4))
    assert dim.graph == 1


def test_dimension_empty():
    assert inductive_dimension(graphs.build_graph(0, [])).graph == -1


def test_dimension_polynomial_base_cases():
    assert expected_dimension_polynomial(1) == (Fraction(0),)
    assert expected_dimension_polynomial(2) == (Fraction(0), Fraction(1))


def test_dimension_polynomial_degree_and_value_at_one():
    for n in range(1, 8):
        poly = expected_dimension_polynomial(n)
        assert len(poly) - 1 <= math.comb(n, 2)
        assert poly_eval(poly, Fraction(1)) == n - 1


def test_dimension_polynomial_matches_small_expectation():
    # exact mean over all graphs on 3 labeled vertices at p = 1/2
    total = Fraction(0)
    for bits in range(8):
        edges = [e for i, e in enumerate([(0, 1), (0, 2), (1, 2)]) if bits >> i & 1]
        total += inductive_dimension(graphs.build_graph(3, edges)).graph
    assert total / 8 == poly_eval(expected_dimension_polynomial(3), Fraction(1, 2))


def test_is_geometric():
    assert is_geometric(graphs.octahedron(), 2) == "yes"
    assert is_geometric(graphs.cross_polytope(3), 3) == "yes"
    assert is_geometric(graphs.complete_graph(4), 2) == "no"
    assert is_geometric(graphs.cycle_graph(5), 1) == "yes"
    assert is_geometric(graphs.cycle_graph(3), 1) == "no"


def test_flatness():
    assert flatness_check(graphs.cross_polytope(3), 3) is True
    assert flatness_check(graphs.cycle_graph(5), 1) is True
    with pytest.raises(NotApplicableError):
        flatness_check(graphs.octahedron(), 2)
    with pytest.raises(NotApplicableError):
        flatness_check(graphs.complete_graph(4), 3)


def test_positive_curvature_reports():
    ico = positive_curvature_report(graphs.icosahedron())
    assert ico["all_sectional_positive"] and ico["diameter"] == 3 and ico["diameter_le_3"]
    octr = positive_curvature_report(graphs.octahedron())
    assert octr["all_sectional_positive"] and octr["diameter"] == 2
    torus = positive_curvature_report(triangular_torus())
    assert not torus["all_sectional_positive"]  # all sectional curvatures are 0
    with pytest.raises(NotApplicableError):
        positive_curvature_report(graphs.star_graph(4))


def test_torus_is_geometric_with_flat_betti():
    from graphforms.complexes import whitney_complex
    from graphforms.spectral import betti_rank_oracle

    torus = triangular_torus()
    assert is_geometric(torus, 2) == "yes"
    assert betti_rank_oracle(whitney_complex(torus)) == (1, 2, 1)
