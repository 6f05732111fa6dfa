import numpy as np
import pytest

from caliblab.cheeger import (WeightedGraph, ball_ratio_profile, bruteforce_cheeger,
                              coarea_check, convex_field_bound, dirichlet_lambda1,
                              dirichlet_lambda1_dense, level_average_bound,
                              sweep_cheeger)
from caliblab.immersion import plane_immersion, sphere_graph
from caliblab.isoperimetric import disc_mesh


def unit_graph(edges):
    n = 1 + max(max(e) for e in edges)
    return WeightedGraph(np.ones(n), {e: 1.0 for e in edges})


def conductance_graph(rng, nmax=14):
    n = int(rng.integers(4, nmax + 1))
    while True:
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.uniform() < 0.35:
                    edges[(i, j)] = float(rng.uniform(0.2, 2.0))
        if not edges:
            continue
        deg = np.zeros(n)
        for (u, v), a in edges.items():
            deg[u] += a
            deg[v] += a
        if np.all(deg > 0):
            try:
                return WeightedGraph(deg, edges)
            except ValueError:
                continue


def test_known_graphs():
    assert bruteforce_cheeger(unit_graph([(0, 1), (1, 2), (2, 3), (3, 0)])).value == 1.0
    assert bruteforce_cheeger(unit_graph([(0, 1)])).value == 1.0
    p3 = bruteforce_cheeger(unit_graph([(0, 1), (1, 2)]))
    assert p3.value == 1.0
    assert p3.witness in (frozenset({0}), frozenset({2}))


def test_witness_reevaluates():
    rng = np.random.default_rng(0)
    g = conductance_graph(rng)
    est = bruteforce_cheeger(g)
    assert np.isclose(est.reevaluate(g), est.value)


def test_sweep_and_eigenvalue_bounds():
    rng = np.random.default_rng(1)
    for _ in range(50):
        g = conductance_graph(rng)
        bf = bruteforce_cheeger(g)
        sw = sweep_cheeger(g, rng.standard_normal(g.n))
        assert sw.value >= bf.value - 1e-12
        ind = np.zeros(g.n)
        ind[list(bf.witness)] = 1.0
        assert abs(sweep_cheeger(g, ind).value - bf.value) < 1e-12
        lam1, bound, _ = dirichlet_lambda1(g, bf.witness)
        assert bf.value <= bound + 1e-9
        assert abs(lam1 - dirichlet_lambda1_dense(g, bf.witness)) < 1e-10


def test_sweep_constant_function_rejected():
    g = unit_graph([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        sweep_cheeger(g, np.ones(3))


def test_lambda1_path_graph():
    g = unit_graph([(0, 1), (1, 2), (2, 3), (3, 4)])
    lam1, bound, vec = dirichlet_lambda1(g, [0, 1, 2, 3])
    assert abs(lam1 - dirichlet_lambda1_dense(g, [0, 1, 2, 3])) < 1e-12
    assert bound == 2.0 * np.sqrt(lam1)
    with pytest.raises(ValueError):
        dirichlet_lambda1(g, range(5))  # needs a proper subset


def test_volume_scaling():
    rng = np.random.default_rng(2)
    g = conductance_graph(rng)
    bf = bruteforce_cheeger(g)
    lam1, _, _ = dirichlet_lambda1(g, bf.witness)
    g4 = WeightedGraph(g.volumes * 4.0, g.edges)
    bf4 = bruteforce_cheeger(g4)
    lam14, bound4, _ = dirichlet_lambda1(g4, bf4.witness)
    assert np.isclose(lam14, lam1 / 4.0)
    assert np.isclose(bf4.value, bf.value / 4.0)
    assert bf4.value <= bound4 + 1e-9


def test_enumeration_cap():
    with pytest.raises(ValueError):
        bruteforce_cheeger(WeightedGraph(np.ones(21),
                                         {(i, i + 1): 1.0 for i in range(20)}))


def test_graph_text_format():
    g = WeightedGraph.from_text("a b 1.5\nb c 2.0\na 3.0\n# comment\n")
    assert g.n == 3
    assert g.volumes[0] == 3.0
    assert g.edges[(0, 1)] == 1.5
    with pytest.raises(ValueError, match="line 1"):
        WeightedGraph.from_text("a b c d\n")


def test_ball_profiles():
    r2, running = ball_ratio_profile(0.0, 2, [0.5, 1.0, 2.0])
    assert np.allclose(r2, [4.0, 2.0, 1.0])
    assert np.all(np.diff(running) <= 0)
    h2, _ = ball_ratio_profile(-1.0, 2, [10.0])
    assert abs(h2[0] - 1.0 / np.tanh(5.0)) < 1e-9
    assert abs(h2[0] - 1.0) < 0.05
    h3, _ = ball_ratio_profile(-1.0, 3, [12.0])
    assert abs(h3[0] - 2.0) < 0.05 * 2.0


def test_level_average_disc_bound():
    for S in (1.0, 2.0, 4.0):
        mesh = disc_mesh(S, 41, 80)
        rr = np.linalg.norm(mesh.nodes, axis=1)
        bound, mean_grad, mean_abs = level_average_bound(rr**2, 2 * rr,
                                                         mesh.weights, S**2)
        assert abs(bound - 8.0 / (3.0 * S)) < 1e-9
        assert abs(mean_grad - 4.0 * S / 3.0) < 1e-9
        assert abs(mean_abs - S**2 / 2.0) < 1e-9


def test_level_denominators_increase():
    mesh = disc_mesh(2.0, 41, 80)
    rr = np.linalg.norm(mesh.nodes, axis=1)
    prev = -np.inf
    for s in (0.5, 1.0, 1.5, 2.0):
        _, _, mean_abs = level_average_bound(rr**2, 2 * rr, mesh.weights, s**2)
        denom = s**2 - mean_abs
        assert denom > prev
        prev = denom


def test_coarea_consistency():
    lhs, rhs = coarea_check(lambda x, y: x**2 + 0.5 * y**2 + 0.2 * x * y,
                            [(-1, 1), (-1, 1)], 161, 400)
    assert abs(lhs - rhs) / lhs < 5e-3


def test_convex_field_sphere_equality():
    rep = convex_field_bound(sphere_graph(1.0), lambda p: p, disc_mesh(0.95, 17, 32),
                             alpha=1.0, h_estimate=0.0)
    assert abs(rep.lhs - 1.0) < 1e-9          # sup ||X|| = R = 1
    assert abs(rep.rhs - 1.0) < 1e-9          # 0 + sup ||H|| = 1/R
    assert rep.holds()
    assert rep.identity_residual < 1e-6
    assert rep.convexity_margin > -1e-8


def test_convex_field_disc_equality():
    rho = 0.8
    disc = plane_immersion(np.eye(3)[:2])
    rep = convex_field_bound(disc, lambda p: p, disc_mesh(rho, 17, 32),
                             alpha=1.0, h_estimate=2.0 / rho)
    assert abs(rep.lhs - 1.0 / rho) < 1e-9
    assert abs(rep.rhs - 1.0 / rho) < 1e-9
    assert rep.identity_residual < 1e-8
