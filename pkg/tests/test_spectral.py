import random
from fractions import Fraction

import numpy as np
import pytest

from graphforms import graphs
from graphforms.complexes import whitney_complex
from graphforms.errors import SizeLimitError
from graphforms.exact import frac_det, int_det
from graphforms.spectral import (
    betti_hodge,
    betti_rank_oracle,
    bundle_for_graph,
    cauchy_binet_sum,
    dirac_and_laplacian,
    dirac_positive_eigenvalues,
    graph_laplacian,
    mckean_singer_supertrace,
    pseudo_determinant,
    rooted_forest_count,
    rooted_forests_exhaustive,
    spanning_tree_count,
    spanning_trees_exhaustive,
    spectra_csv,
    spectrum_report,
    super_pairing_check,
    zeta,
    zeta_roots,
)


def test_int_det_and_frac_det():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert int_det(m) == 18
    assert frac_det(m) == Fraction(18)
    assert int_det([[1, 2], [2, 4]]) == 0


def test_k2_bundle_blocks():
    b = bundle_for_graph(graphs.complete_graph(2))
    assert b.size == 3
    assert b.blocks[0].tolist() == [[1.0, -1.0], [-1.0, 1.0]]
    assert b.blocks[1].tolist() == [[2.0]]


def test_k1_bundle():
    b = bundle_for_graph(graphs.complete_graph(1))
    assert b.size == 1 and b.L_int.tolist() == [[0]]


def test_octahedron_bundle_size_and_kernel():
    b = bundle_for_graph(graphs.octahedron())
    assert b.size == 26
    w0 = b.block_eigs[0][0]
    assert int(np.sum(w0 < b.kernel_tol)) == 1  # connected
    assert np.all(w0 > -1e-9)


def test_complete_graph_block_sizes():
    from math import comb

    b = bundle_for_graph(graphs.complete_graph(5))
    assert b.dims == tuple(comb(5, k + 1) for k in range(5))
    assert b.size == 2**5 - 1


def test_size_refusal():
    s = whitney_complex(graphs.complete_graph(11))
    with pytest.raises(SizeLimitError):
        dirac_and_laplacian(s)


def test_betti_examples():
    assert betti_rank_oracle(whitney_complex(graphs.cycle_graph(4))) == (1, 1)
    assert betti_rank_oracle(whitney_complex(graphs.complete_graph(5))) == (1, 0, 0, 0, 0)
    assert betti_rank_oracle(whitney_complex(graphs.icosahedron())) == (1, 0, 1)
    two_points = graphs.build_graph(2, [])
    assert betti_rank_oracle(whitney_complex(two_points)) == (2,)


def test_hodge_matches_oracle():
    for g in (
        graphs.octahedron(),
        graphs.cycle_graph(4),
        graphs.cross_polytope(3),
        graphs.random_er(9, 0.5, 2),
        graphs.random_er(9, 0.3, 3),
    ):
        s = whitney_complex(g)
        b = dirac_and_laplacian(s)
        assert tuple(betti_hodge(b)[0]) == betti_rank_oracle(s)


def test_mckean_singer():
    b = bundle_for_graph(graphs.octahedron())
    assert mckean_singer_supertrace(b, 0.0) == pytest.approx(2.0, abs=1e-12)
    assert mckean_singer_supertrace(b, 1.0) == pytest.approx(2.0, abs=1e-8)
    b5 = bundle_for_graph(graphs.cycle_graph(5))
    assert mckean_singer_supertrace(b5, 10.0) == pytest.approx(0.0, abs=1e-8)


def test_pseudo_determinant_k2():
    assert pseudo_determinant(graph_laplacian(graphs.complete_graph(2)).astype(float)) == pytest.approx(2.0)


def test_spanning_trees():
    assert spanning_tree_count(graphs.cycle_graph(5)).count == 5
    assert spanning_tree_count(graphs.complete_graph(2)).count == 1
    k4 = spanning_tree_count(graphs.complete_graph(4))
    assert k4.count == 16
    assert spanning_trees_exhaustive(graphs.complete_graph(4)) == 16
    assert round(k4.damped_estimate) == 16
    disconnected = graphs.build_graph(4, [(0, 1), (2, 3)])
    tc = spanning_tree_count(disconnected)
    assert tc.count == 0 and not tc.connected


def test_rooted_forests():
    assert rooted_forest_count(graphs.complete_graph(1)) == 1
    assert rooted_forest_count(graphs.complete_graph(2)) == 3
    assert rooted_forests_exhaustive(graphs.complete_graph(2)) == 3
    assert rooted_forest_count(graphs.cycle_graph(3)) == 16
    assert rooted_forests_exhaustive(graphs.cycle_graph(3)) == 16


def test_forest_matches_brute_on_random():
    for seed in range(6):
        g = graphs.random_er(6, 0.5, seed + 40)
        assert rooted_forest_count(g) == rooted_forests_exhaustive(g)


def test_cauchy_binet_scalar():
    det_side, minor_side = cauchy_binet_sum([[3]], [[3]], 1)
    assert det_side == minor_side == 10  # 1 + a^2 with a = 3


def test_cauchy_binet_d0_of_k2():
    d0 = whitney_complex(graphs.complete_graph(2)).d[0]
    det_side, minor_side = cauchy_binet_sum(d0.tolist(), d0.tolist(), 1)
    assert det_side == minor_side


def test_cauchy_binet_random_rectangular():
    rng = random.Random(17)
    for _ in range(25):
        f = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        g2 = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        det_side, minor_side = cauchy_binet_sum(f, g2, 2)
        assert det_side == minor_side


def test_cauchy_binet_shape_mismatch():
    with pytest.raises(ValueError):
        cauchy_binet_sum([[1, 0]], [[1], [0]], 1)


def test_zeta_at_zero_counts_positive_eigenvalues():
    b = bundle_for_graph(graphs.cycle_graph(6))
    lam = dirac_positive_eigenvalues(b)
    assert zeta(b, 0) == pytest.approx(len(lam))


def test_zeta_c4_value():
    b = bundle_for_graph(graphs.cycle_graph(4))
    lam = dirac_positive_eigenvalues(b)
    # positive Dirac spectrum of C_4: {sqrt(2), sqrt(2), 2}
    assert sorted(np.round(lam**2, 9)) == [2.0, 2.0, 4.0]
    assert zeta(b, 2).real == pytest.approx(1.25, abs=1e-9)


def test_zeta_roots_verified():
    b = bundle_for_graph(graphs.cycle_graph(10))
    roots = zeta_roots(b, (0.0, 1.0), (0.0, 30.0))
    assert roots
    for r in roots:
        assert abs(zeta(b, r)) < 1e-8


def test_zeta_roots_empty_window():
    b = bundle_for_graph(graphs.cycle_graph(10))
    assert zeta_roots(b, (0.0, 0.1), (0.2, 0.4)) == []


def test_super_pairing():
    for g in (graphs.octahedron(), graphs.complete_graph(4), graphs.random_er(8, 0.5, 5)):
        assert super_pairing_check(bundle_for_graph(g))


def test_spectrum_report_and_csv():
    b = bundle_for_graph(graphs.complete_graph(3))
    rep = spectrum_report(b)
    assert rep.kernel_dims == (1, 0, 0)
    text = spectra_csv(b)
    assert text.startswith("block,eigenvalue")
    assert len(text.splitlines()) == 1 + b.size
