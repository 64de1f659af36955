import random
from fractions import Fraction

import numpy as np
import pytest

from graphforms import graphs
from graphforms.complexes import (
    Chain,
    Form,
    clique_counts,
    cup_product,
    d_apply,
    d_matrix_triplets,
    euler_characteristic,
    exterior_derivative,
    stokes_pairing,
    whitney_complex,
)
from graphforms.errors import BudgetExceededError
from graphforms.exact import int_rank
from graphforms.spectral import bundle_for_graph


def test_k3_fvector():
    s = whitney_complex(graphs.complete_graph(3))
    assert s.dims == (3, 3, 1)


def test_octahedron_fvector():
    s = whitney_complex(graphs.octahedron())
    assert s.dims == (6, 12, 8)
    assert s.top_dim == 2


def test_c5_triangle_free():
    s = whitney_complex(graphs.cycle_graph(5))
    assert s.dims == (5, 5)


def test_euler_characteristic_examples():
    assert euler_characteristic(whitney_complex(graphs.octahedron())) == 2
    assert euler_characteristic(whitney_complex(graphs.cycle_graph(5))) == 0
    assert euler_characteristic(whitney_complex(graphs.complete_graph(1))) == 1


def test_faces_always_present():
    s = whitney_complex(graphs.random_er(8, 0.6, 3))
    for k in range(1, s.top_dim + 1):
        for simplex in s.simplices[k]:
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                assert face in s.index[k - 1]


def test_d_squared_zero():
    for g in (
        graphs.complete_graph(5),
        graphs.octahedron(),
        graphs.cross_polytope(3),
        graphs.random_er(9, 0.5, 4),
        graphs.random_er(9, 0.7, 5),
    ):
        s = whitney_complex(g)
        for k in range(s.top_dim):
            prod = s.d[k + 1] @ s.d[k] if k + 1 <= s.top_dim else None
            if prod is not None and prod.size:
                assert not np.any(prod)


def test_exterior_derivative_k2():
    s = whitney_complex(graphs.complete_graph(2))
    d0 = exterior_derivative(s, 0)
    assert d0.tolist() == [[-1, 1]]


def test_exterior_derivative_c4_rank():
    s = whitney_complex(graphs.cycle_graph(4))
    d0 = exterior_derivative(s, 0)
    assert d0.shape == (4, 4)
    assert int_rank(d0.tolist()) == 3


def test_exterior_derivative_beyond_top():
    s = whitney_complex(graphs.cycle_graph(4))
    assert exterior_derivative(s, 5).shape[0] == 0


def test_stokes_triangle():
    s = whitney_complex(graphs.complete_graph(3))
    chain = Chain(1, (1,) * len(s.simplices[1]))
    form = Form(0, (Fraction(2), Fraction(-1), Fraction(5)))
    lhs, rhs = stokes_pairing(s, chain, form)
    assert lhs == rhs


def test_stokes_fundamental_octahedron_chain():
    # antipodal pairs (0,1),(2,3),(4,5); orientation sign = product of axis signs
    s = whitney_complex(graphs.octahedron())
    sign = lambda v: 1 if v % 2 == 0 else -1
    coeffs = tuple(sign(a) * sign(b) * sign(c) for (a, b, c) in s.simplices[2])
    chain = Chain(2, coeffs)
    boundary = s.d[1].T @ np.array(coeffs)
    assert not np.any(boundary)  # the fundamental 2-chain has empty boundary
    rng = random.Random(1)
    form = Form(1, tuple(rng.randint(-4, 4) for _ in s.simplices[1]))
    lhs, rhs = stokes_pairing(s, chain, form)
    assert lhs == rhs == 0


def test_stokes_random_property():
    rng = random.Random(6)
    g = graphs.random_er(8, 0.5, 12)
    s = whitney_complex(g)
    for _ in range(50):
        k = rng.randrange(s.top_dim)
        if not s.simplices[k + 1]:
            continue
        chain = Chain(k + 1, tuple(rng.randint(-3, 3) for _ in s.simplices[k + 1]))
        form = Form(k, tuple(rng.randint(-3, 3) for _ in s.simplices[k]))
        lhs, rhs = stokes_pairing(s, chain, form)
        assert lhs == rhs


def test_stokes_degree_mismatch():
    s = whitney_complex(graphs.complete_graph(3))
    with pytest.raises(ValueError):
        stokes_pairing(s, Chain(1, (0, 0, 0)), Form(1, (0, 0, 0)))


def test_cup_zero_factor():
    s = whitney_complex(graphs.octahedron())
    f = Form(1, (Fraction(0),) * 12)
    g2 = Form(1, tuple(Fraction(1) for _ in range(12)))
    assert all(v == 0 for v in cup_product(s, f, g2).values)


def test_cup_beyond_top_dimension():
    s = whitney_complex(graphs.cycle_graph(4))
    f = Form(1, (Fraction(1),) * 4)
    assert cup_product(s, f, f).values == ()


def test_cup_leibniz_random():
    rng = random.Random(9)
    g = graphs.random_er(7, 0.7, 21)
    s = whitney_complex(g)
    if s.top_dim < 2:
        pytest.skip("need 2-simplices")
    for _ in range(20):
        p, q = 1, 1
        f = Form(p, tuple(Fraction(rng.randint(-3, 3)) for _ in s.simplices[p]))
        h = Form(q, tuple(Fraction(rng.randint(-3, 3)) for _ in s.simplices[q]))
        left = d_apply(s, cup_product(s, f, h))
        right_a = cup_product(s, d_apply(s, f), h)
        right_b = cup_product(s, f, d_apply(s, h))
        sign = (-1) ** p
        combined = tuple(
            a + sign * b for a, b in zip(right_a.values, right_b.values)
        ) or right_a.values
        assert tuple(left.values) == combined


def test_cup_closed_forms_product_closed():
    # two random closed 1-forms on the octahedron: d(f cup g) = 0
    rng = random.Random(4)
    s = whitney_complex(graphs.octahedron())
    d0 = s.d[0]
    for _ in range(10):
        pot_f = [Fraction(rng.randint(-3, 3)) for _ in range(6)]
        pot_g = [Fraction(rng.randint(-3, 3)) for _ in range(6)]
        f = d_apply(s, Form(0, tuple(pot_f)))   # exact, hence closed
        h = d_apply(s, Form(0, tuple(pot_g)))
        prod = cup_product(s, f, h)
        assert all(v == 0 for v in d_apply(s, prod).values)


def test_cup_octahedron_meridian_equator_area_form():
    # the paper-style factorization of the area class into two 1-forms
    g = graphs.octahedron()
    s = whitney_complex(g)
    bundle = bundle_for_graph(g)
    sgn = lambda v: 1 if v % 2 == 0 else -1
    meridian = [0] * 12
    equator = [0] * 12
    for i, (u, v) in enumerate(s.simplices[1]):
        if u in (0, 1):
            meridian[i] = sgn(u)
        else:
            equator[i] = sgn(u) * sgn(v)
    prod = cup_product(s, Form(1, tuple(meridian)), Form(1, tuple(equator)))
    assert all(abs(v) == 1 for v in prod.values)  # nonvanishing on every triangle
    basis = bundle.harmonic_basis(2)
    proj = basis.T @ np.array([float(v) for v in prod.values])
    assert np.linalg.norm(proj) > 1.0


def test_budget_exceeded_names_dimension():
    with pytest.raises(BudgetExceededError) as err:
        whitney_complex(graphs.complete_graph(12), budget=50)
    assert err.value.dimension_reached is not None


def test_triplet_export():
    s = whitney_complex(graphs.complete_graph(2))
    assert d_matrix_triplets(s, 0).splitlines() == ["0 0 -1", "0 1 1"]


def test_counts_match_structure():
    for seed in range(4):
        g = graphs.random_er(9, 0.5, seed)
        assert clique_counts(g) == whitney_complex(g).dims
