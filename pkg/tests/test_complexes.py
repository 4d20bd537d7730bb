"""Classical pipeline: neighborhood graphs, clique complexes, boundaries, Laplacians,
and exact Betti numbers. Golden matrices live in qtda.example; small cases here are
worked out by hand.
"""

import numpy as np
import pytest

from qtda.complexes import (
    PointCloud,
    build_complex,
    build_rips_graph,
    boundary_matrix,
    complex_from_simplices,
    exact_betti,
    float_kernel_dimension,
    integer_rank,
    laplacian,
    random_complex,
    SimplicialComplex,
)
from qtda.errors import EmptyDimensionError
from qtda.example import (
    DEMO_EDGES,
    DEMO_EPSILON,
    EXPECTED_D1,
    EXPECTED_D2,
    EXPECTED_DELTA1,
    demo_complex,
    demo_point_cloud,
)


def test_point_cloud_shape_and_distances():
    cloud = PointCloud.from_rows([[0.0, 0.0], [3.0, 4.0]])
    assert cloud.n == 2 and cloud.dim == 2
    dm = cloud.distance_matrix()
    np.testing.assert_allclose(dm, [[0.0, 5.0], [5.0, 0.0]])


def test_rips_graph_below_threshold_has_no_edges():
    cloud = PointCloud.from_rows([[0.0], [1.0]])
    assert build_rips_graph(cloud, 0.5).edges == frozenset()


def test_rips_graph_threshold_is_inclusive():
    cloud = PointCloud.from_rows([[0.0], [1.0]])
    assert build_rips_graph(cloud, 1.0).edges == frozenset({(0, 1)})


def test_rips_graph_rejects_negative_epsilon():
    cloud = PointCloud.from_rows([[0.0], [1.0]])
    with pytest.raises(ValueError):
        build_rips_graph(cloud, -0.1)


def test_demo_cloud_edge_set():
    graph = build_rips_graph(demo_point_cloud(), DEMO_EPSILON)
    assert graph.edges == frozenset(DEMO_EDGES)


def test_clique_complex_of_triangle_graph():
    cloud = PointCloud.from_rows([[0.0, 0.0], [1.0, 0.0], [0.5, 0.8]])
    cx = build_complex(build_rips_graph(cloud, 1.1), max_dim=2)
    assert cx.simplices(2) == ((0, 1, 2),)


def test_clique_complex_fills_every_triangle_of_demo_graph():
    # The built-in demo complex deliberately leaves {2,3,4} hollow; clique
    # semantics on the same graph must fill it.
    graph = build_rips_graph(demo_point_cloud(), DEMO_EPSILON)
    cx = build_complex(graph, max_dim=2)
    assert cx.size(1) == 6
    assert cx.simplices(2) == ((0, 1, 2), (2, 3, 4))


def test_edgeless_graph_has_vertices_only():
    cloud = PointCloud.from_rows([[0.0], [10.0], [20.0], [30.0]])
    cx = build_complex(build_rips_graph(cloud, 1.0), max_dim=2)
    assert cx.size(0) == 4
    assert cx.size(1) == 0
    assert cx.simplices(7) == ()


def test_simplex_lists_are_sorted_and_closed():
    for seed in range(8):
        cx = random_complex(7, 0.5, max_dim=6, seed=seed)
        for k in range(cx.max_dim + 1):
            level = cx.simplices(k)
            assert list(level) == sorted(level)
            if k == 0:
                continue
            below = set(cx.simplices(k - 1))
            for s in level:
                for t in range(k + 1):
                    assert s[:t] + s[t + 1 :] in below


def test_demo_boundary_k1_matches_golden():
    np.testing.assert_array_equal(boundary_matrix(demo_complex(), 1).matrix, EXPECTED_D1)


def test_demo_boundary_k2_matches_golden():
    np.testing.assert_array_equal(boundary_matrix(demo_complex(), 2).matrix, EXPECTED_D2)


def test_boundary_columns_have_alternating_unit_entries():
    cx = random_complex(6, 0.7, max_dim=5, seed=3)
    for k in range(1, cx.max_dim + 1):
        if cx.size(k) == 0:
            break
        mat = boundary_matrix(cx, k).matrix
        assert mat.shape == (cx.size(k - 1), cx.size(k))
        for col in mat.T:
            nz = col[col != 0]
            assert len(nz) == k + 1
            assert set(np.abs(nz)) == {1}


def test_boundary_of_boundary_is_zero():
    for seed in range(10):
        cx = random_complex(7, 0.6, max_dim=6, seed=seed)
        for k in range(2, cx.max_dim + 1):
            if cx.size(k) == 0:
                break
            d_k = boundary_matrix(cx, k).matrix
            d_km1 = boundary_matrix(cx, k - 1).matrix
            assert not (d_km1 @ d_k).any()


def test_boundary_empty_dimension_raises():
    cx = demo_complex()
    with pytest.raises(EmptyDimensionError):
        boundary_matrix(cx, 3)


def test_demo_laplacian_matches_golden():
    np.testing.assert_array_equal(laplacian(demo_complex(), 1).matrix, EXPECTED_DELTA1)


def test_single_edge_vertex_laplacian():
    cloud = PointCloud.from_rows([[0.0], [1.0]])
    cx = build_complex(build_rips_graph(cloud, 1.0), max_dim=1)
    np.testing.assert_array_equal(laplacian(cx, 0).matrix, [[1, -1], [-1, 1]])


def test_filled_triangle_edge_laplacian_is_three_i():
    # d1^T d1 = 2I + (ones - signs), d2 d2^T fills in the rest; the sum is 3I.
    cx = complex_from_simplices(3, {1: [(0, 1), (0, 2), (1, 2)], 2: [(0, 1, 2)]})
    np.testing.assert_array_equal(laplacian(cx, 1).matrix, 3 * np.eye(3, dtype=int))


def test_laplacian_symmetric_and_psd():
    rng = np.random.default_rng(11)
    for seed in range(6):
        cx = random_complex(7, 0.5, max_dim=6, seed=seed)
        for k in range(cx.max_dim + 1):
            if cx.size(k) == 0:
                break
            mat = laplacian(cx, k).matrix
            np.testing.assert_array_equal(mat, mat.T)
            for _ in range(50):
                v = rng.standard_normal(mat.shape[0])
                v /= np.linalg.norm(v)
                assert v @ mat @ v >= -1e-9


def test_demo_complex_has_one_loop():
    assert exact_betti(demo_complex(), 1) == 1


def test_edgeless_complex_counts_components():
    cloud = PointCloud.from_rows([[0.0], [10.0], [20.0], [30.0], [40.0]])
    cx = build_complex(build_rips_graph(cloud, 1.0), max_dim=1)
    assert exact_betti(cx, 0) == 5


def test_hollow_vs_filled_triangle():
    hollow = complex_from_simplices(3, {1: [(0, 1), (0, 2), (1, 2)]})
    filled = complex_from_simplices(3, {1: [(0, 1), (0, 2), (1, 2)], 2: [(0, 1, 2)]})
    assert exact_betti(hollow, 1) == 1
    assert exact_betti(filled, 1) == 0


def test_square_loop_betti():
    cloud = PointCloud.from_rows([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    cx = build_complex(build_rips_graph(cloud, 1.0), max_dim=2)
    assert cx.size(1) == 4 and cx.size(2) == 0
    assert exact_betti(cx, 0) == 1
    assert exact_betti(cx, 1) == 1


def test_betti_zero_for_empty_dimension():
    hollow = complex_from_simplices(3, {1: [(0, 1), (0, 2), (1, 2)]})
    assert exact_betti(hollow, 2) == 0


def test_euler_poincare_identity():
    for seed in range(12):
        n = 5 + seed % 4
        cx = random_complex(n, 0.5, max_dim=n - 1, seed=seed)
        chi_counts = sum((-1) ** k * cx.size(k) for k in range(cx.max_dim + 1))
        chi_betti = sum((-1) ** k * exact_betti(cx, k) for k in range(cx.max_dim + 1))
        assert chi_counts == cx.euler_characteristic() == chi_betti


def test_random_complex_edge_prob_extremes():
    assert random_complex(5, 0.0, max_dim=4, seed=0).size(1) == 0
    full = random_complex(3, 1.0, max_dim=2, seed=0)
    assert full.simplices(2) == ((0, 1, 2),)


def test_random_complex_is_seed_deterministic():
    a = random_complex(6, 0.5, max_dim=5, seed=42)
    b = random_complex(6, 0.5, max_dim=5, seed=42)
    c = random_complex(6, 0.5, max_dim=5, seed=43)
    assert a.to_json() == b.to_json()
    assert a.to_json() != c.to_json()


def test_complex_json_round_trip(demo_cx):
    again = SimplicialComplex.from_json(demo_cx.to_json())
    assert again.to_json() == demo_cx.to_json()
    assert again.simplices(2) == demo_cx.simplices(2)


def test_complex_from_simplices_rejects_open_complex():
    with pytest.raises(ValueError, match="not closed"):
        complex_from_simplices(3, {2: [(0, 1, 2)]})


def test_integer_rank_hand_cases():
    assert integer_rank(np.array([[2, 4], [1, 2]])) == 1
    assert integer_rank(np.eye(4, dtype=int)) == 4
    assert integer_rank(np.zeros((3, 5), dtype=int)) == 0


def test_integer_rank_agrees_with_float_rank():
    rng = np.random.default_rng(7)
    for _ in range(20):
        mat = rng.integers(-3, 4, size=(6, 5))
        assert integer_rank(mat) == np.linalg.matrix_rank(mat)


def test_exact_betti_agrees_with_float_kernel(demo_cx):
    for k in (0, 1, 2):
        if demo_cx.size(k) == 0:
            continue
        mat = laplacian(demo_cx, k).matrix
        assert exact_betti(demo_cx, k) == float_kernel_dimension(mat.astype(float))
