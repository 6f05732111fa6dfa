"""Acceptance gate: every stated criterion at its stated tolerance, one test
per criterion, each printing a PASS line with the measured margin.

Three sub-checks of the quaternionic criterion reproduce sign defects in
the printed source tables; they are implemented verbatim and kept as
strict expected failures with the corrected versions asserted green next
to them (analysis in the decisions ledger).
"""

import time

import numpy as np
import pytest

from caliblab.calibrations import catalog, volume_calibration
from caliblab.cheeger import ball_ratio_profile, bruteforce_cheeger, dirichlet_lambda1, \
    level_average_bound, sweep_cheeger
from caliblab.cmc import cmc_verify
from caliblab.comass import comass
from caliblab.exprmap import ParseError, eval_jet2, parse
from caliblab.graphcal import contraction_via_factors, graph_point, q_graph_expansion
from caliblab.immersion import CmcProfile, catenoid_patch, helicoid_graph, sphere_graph
from caliblab.isoperimetric import disc_mesh, heinz_radius_check
from caliblab.quatlab import (HyperHermitianSpace, canonical_basis, dae_quantities,
                              dae_stated_combination, expected_psi_diagonal,
                              expected_spectrum, form_deviation, omega_delta_matrix,
                              psi_matrix, quaternionic_angle, random_complex_plane,
                              sample_group_element, space_form_contraction,
                              spectrum_check, stated_psi_diagonal, FourPlane)
from caliblab.subgeom import laplacian_costheta_check, phi_psi
from caliblab.suites import SuiteConfig, run_suite


def _passline(num, text):
    print(f"[PASS] criterion {num}: {text}")


def test_criterion_1_comass_catalog():
    t0 = time.perf_counter()
    worst = 0.0
    worst_model = 0.0
    for cal in catalog():
        res = comass(cal.form, restarts=200, tol=1e-9, seed=0)
        worst = max(worst, abs(res.value - 1.0))
        worst_model = max(worst_model, 1.0 - cal.model_value())
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-3
    assert worst_model <= 1e-9
    assert elapsed < 60.0
    _passline(1, f"seven calibrations at comass 1 (max dev {worst:.2e}, "
                 f"model-frame slack {worst_model:.1e}, {elapsed:.1f}s)")


def test_criterion_2_cmc_family():
    worst = 0.0
    for m, c in ((2, 0.5), (2, 1.0), (3, 1.5)):
        chk = cmc_verify(m, c, samples=50, seed=0)
        assert chk.max_H_residual <= 1e-6, (m, c, chk.max_H_residual)
        assert chk.min_cos_theta > chk.angle_bound
        worst = max(worst, chk.max_H_residual)
    prof = CmcProfile(2, 1.0)
    prof_dev = max(abs(prof.value(r) - 2.0 * (np.cosh(r / 2.0) - 1.0))
                   for r in np.linspace(0.1, 4.0, 9))
    assert prof_dev <= 1e-8
    _passline(2, f"hyperbolic graphs carry mean curvature c/m "
                 f"(max residual {worst:.2e}, profile dev {prof_dev:.2e})")


def test_criterion_3_laplacian_identity():
    vol = volume_calibration(2, 1)
    rng = np.random.default_rng(0)
    cases = [
        (sphere_graph(1.0), lambda: rng.uniform(-0.4, 0.4, 2), 7),
        (catenoid_patch(), lambda: rng.uniform([0.1, -0.4], [1.0, 0.6]), 7),
        (helicoid_graph(), lambda: rng.uniform([1.0, -0.4], [1.9, 0.4]), 6),
    ]
    worst = 0.0
    count = 0
    for imm, draw, n_pts in cases:
        for _ in range(n_pts):
            p = draw()
            _, _, rel = laplacian_costheta_check(imm, vol, p, step=1e-3)
            worst = max(worst, rel)
            count += 1
    assert count == 20
    assert worst <= 5e-3
    _, _, coarse = laplacian_costheta_check(sphere_graph(1.0), vol, [0.25, 0.1], step=4e-3)
    _, _, fine = laplacian_costheta_check(sphere_graph(1.0), vol, [0.25, 0.1], step=2e-3)
    order = float(np.log2(coarse / fine))
    assert order >= 1.8
    _passline(3, f"angle Laplacian identity on 20 points "
                 f"(worst rel {worst:.1e}, refinement order {order:.2f})")


def test_criterion_4_pointwise_bounds():
    vol21 = volume_calibration(2, 1)
    vol22 = volume_calibration(2, 2)
    rng = np.random.default_rng(1)
    from caliblab.immersion import GraphImmersion

    pool = [
        (sphere_graph(1.0), vol21, lambda: rng.uniform(-0.4, 0.4, 2)),
        (catenoid_patch(), vol21, lambda: rng.uniform([0.1, -0.4], [1.0, 0.6])),
        (GraphImmersion(["0.6*x1 + 0.2*x2^2", "0.4*x2 - 0.3*x1*x2"], 2), vol22,
         lambda: rng.uniform(-0.6, 0.6, 2)),
    ]
    worst_phi = worst_z = worst_grad = worst_hs = 0.0
    for _ in range(1000):
        imm, omega, draw = pool[int(rng.integers(3))]
        fp, morph = phi_psi(imm, omega, draw(), with_nabla_H=False)
        sin = fp.sin_theta
        worst_phi = max(worst_phi, morph.phi_operator_norm() - sin)
        z_norm = float(np.linalg.norm(morph.phi.T @ fp.H_frame))
        worst_z = max(worst_z, z_norm - sin * fp.norm_H())
        bphi2 = float(morph.b_phi @ morph.b_phi)
        worst_grad = max(worst_grad, bphi2 - fp.m * sin**2 * fp.norm_B_sq())
        worst_hs = max(worst_hs, morph.phi_norm_sq() - fp.m * sin**2)
    for name, v in (("phi", worst_phi), ("z", worst_z), ("grad", worst_grad),
                    ("hs", worst_hs)):
        assert v <= 1e-9, (name, v)
    _passline(4, f"morphism/field/gradient bounds on 1000 samples "
                 f"(worst violation {max(worst_phi, worst_z, worst_grad, worst_hs):.1e})")


def test_criterion_5_isoperimetric_domains():
    rep = run_suite(SuiteConfig(suite="isoperimetric", seed=0))
    domains = [c for c in rep.checks if c.check_id.startswith("isoperimetric-")]
    assert len(domains) >= 10
    assert all(c.passed for c in rep.checks), [c.check_id for c in rep.checks
                                               if not c.passed]
    for radius in (1.0, 2.0, 3.0):
        assert heinz_radius_check(1.0 / radius, 0.99 * radius)
    _passline(5, f"isoperimetric inequality on {len(domains)} meshed domains, "
                 f"radius bound on the curvature-1/R graphs")


def test_criterion_6_graph_positivity_and_contraction():
    rng = np.random.default_rng(2)
    worst_q = 0.0
    for _ in range(1000):
        m, n = 3, 3
        delta = float(rng.uniform(0.05, 0.95))
        lam = np.sort(np.abs(rng.standard_normal(m)))[::-1]
        prod = max(lam[i] * lam[j] for i in range(m) for j in range(i + 1, m))
        if prod > 0:
            lam *= np.sqrt((1 - delta) / prod) * float(rng.uniform(0.2, 1.0))
        h = rng.standard_normal((n, m, m))
        h = 0.5 * (h + h.transpose(0, 2, 1))
        worst_q = max(worst_q, delta * float(np.sum(h * h)) - q_graph_expansion(lam, h))
    assert worst_q <= 1e-9
    from caliblab.ambient import ConformalFactor, ProductRiemannian
    from caliblab.immersion import GraphImmersion

    space = ProductRiemannian([ConformalFactor(2, 1.0), ConformalFactor(2, -0.7)])
    imm = GraphImmersion(["0.4*x1 + 0.2*x2^2", "0.3*x2 - 0.25*x1*x2"], 2, ambient=space)
    worst_c = 0.0
    for _ in range(6):
        u = rng.uniform(-0.3, 0.3, size=2)
        direct, factored = contraction_via_factors(imm, u)
        worst_c = max(worst_c, abs(direct - factored))
    assert worst_c <= 1e-8
    _passline(6, f"graph quadratic form stays delta-positive on 1000 draws "
                 f"(worst {worst_q:.1e}); factored contraction residual {worst_c:.1e}")


V2 = HyperHermitianSpace(2)


def test_criterion_7_quaternionic_algebra():
    for n in (1, 2):
        ok, fam, _ = spectrum_check(HyperHermitianSpace(n), tol=1e-10)
        assert ok and fam < 1e-12
    line = FourPlane(V2.quaternionic_line(np.eye(8)[0]))
    c_line, _, _ = quaternionic_angle(V2, line)
    e = np.eye(8)
    tc = FourPlane(np.stack([e[0], V2.I @ e[0], e[4], V2.I @ e[4]]))
    c_tc, _, _ = quaternionic_angle(V2, tc)
    assert abs(c_line - 1.0) <= 1e-12
    assert abs(c_tc - 1.0 / 3.0) <= 1e-12

    rng = np.random.default_rng(3)
    worst_psi = 0.0
    for _ in range(100):
        data = canonical_basis(V2, random_complex_plane(V2, rng))
        worst_psi = max(worst_psi, float(np.abs(
            psi_matrix(V2, data) - expected_psi_diagonal(data.s, data.c)).max()))
    assert worst_psi <= 1e-10

    worst_dae = 0.0
    worst_bound = 0.0
    for k in range(1000):
        if k % 10 == 0:
            data = canonical_basis(V2, random_complex_plane(V2, rng))
        h = rng.standard_normal((4, 4, 4))
        h = 0.5 * (h + h.transpose(0, 2, 1))
        res = dae_quantities(V2, data, h)
        worst_dae = max(worst_dae, res.residual)
        ub = 4.0 / 3.0 * res.norm_B_sq
        worst_bound = max(worst_bound, -res.D, -res.A, -res.E,
                          res.D - ub, res.A - ub, res.E - ub)
    assert worst_dae <= 1e-10
    assert worst_bound <= 1e-10

    worst_con = 0.0
    for _ in range(30):
        data = canonical_basis(V2, random_complex_plane(V2, rng))
        direct, rhs, _ = space_form_contraction(V2, data, float(rng.uniform(-2, 2)))
        worst_con = max(worst_con, abs(direct - rhs))
    assert worst_con <= 1e-10
    _passline(7, f"spectrum/angles/pairing matrix/decomposition/contraction "
                 f"(pairing dev {worst_psi:.1e}, decomposition residual "
                 f"{worst_dae:.1e}, contraction {worst_con:.1e})")


@pytest.mark.xfail(strict=True,
                   reason="stated multiplicity profile {5/3:3, 1:4, 1/3:3, -1:6, "
                   "-1/3:12} is not the spectrum of the operator defined by the "
                   "fundamental form; the invariant decomposition forces "
                   "{5/3:3, -1:10, 1/3:15} (decisions ledger)")
def test_criterion_7_stated_multiplicity_profile():
    eig = np.linalg.eigvalsh(omega_delta_matrix(V2))
    stated = {5.0 / 3.0: 3, 1.0: 4, 1.0 / 3.0: 3, -1.0: 6, -1.0 / 3.0: 12}
    remaining = eig.copy()
    for value, count in sorted(stated.items()):
        hits = np.abs(remaining - value) < 1e-10
        assert int(hits.sum()) == count
        remaining = remaining[~hits]
    assert remaining.size == 0


@pytest.mark.xfail(strict=True,
                   reason="stated pairing matrix has the anti-self-dual block "
                   "with opposite signs (decisions ledger)")
def test_criterion_7_stated_psi_block():
    rng = np.random.default_rng(4)
    data = canonical_basis(V2, random_complex_plane(V2, rng, s=0.6))
    assert np.abs(psi_matrix(V2, data)
                  - stated_psi_diagonal(data.s, data.c)).max() <= 1e-10


@pytest.mark.xfail(strict=True,
                   reason="stated combination (D + s^2 E) - s^2 (A + 2/3||B||^2) "
                   "differs from the defining pairing by 2 s^2 E-type terms; the "
                   "identity closing at 1e-14 is D - s^2 (A + E) (decisions ledger)")
def test_criterion_7_stated_dae_combination():
    rng = np.random.default_rng(5)
    data = canonical_basis(V2, random_complex_plane(V2, rng, s=0.6))
    h = rng.standard_normal((4, 4, 4))
    h = 0.5 * (h + h.transpose(0, 2, 1))
    res = dae_quantities(V2, data, h)
    assert abs(dae_stated_combination(data, res) - res.q_tilde_raw) <= 1e-10


def test_criterion_8_symmetry_group():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        worst = max(worst, form_deviation(V2, sample_group_element(V2, rng)))
    assert worst <= 1e-9
    from scipy.stats import ortho_group

    deviating = 0
    for _ in range(100):
        Q = ortho_group.rvs(8, random_state=rng)
        if np.linalg.det(Q) < 0:
            Q[:, 0] = -Q[:, 0]
        if form_deviation(V2, Q) >= 1e-3:
            deviating += 1
    assert deviating >= 95
    _passline(8, f"100 sampled symmetry elements preserve the form "
                 f"(worst {worst:.1e}); {deviating}/100 generic rotations deviate")


def test_criterion_9_cheeger():
    rng = np.random.default_rng(7)
    from tests_helpers_cheeger import conductance_graph

    worst_wit = 0.0
    worst_lam = 0.0
    for _ in range(50):
        g = conductance_graph(rng)
        bf = bruteforce_cheeger(g)
        ind = np.zeros(g.n)
        ind[list(bf.witness)] = 1.0
        worst_wit = max(worst_wit, abs(sweep_cheeger(g, ind).value - bf.value))
        _, bound, _ = dirichlet_lambda1(g, bf.witness)
        worst_lam = max(worst_lam, bf.value - bound)
    assert worst_wit <= 1e-12
    assert worst_lam <= 1e-9
    h2, _ = ball_ratio_profile(-1.0, 2, [10.0])
    h3, _ = ball_ratio_profile(-1.0, 3, [12.0])
    assert abs(h2[0] - 1.0) <= 0.05
    assert abs(h3[0] - 2.0) <= 0.05 * 2.0
    mesh = disc_mesh(2.0, 41, 80)
    rr = np.linalg.norm(mesh.nodes, axis=1)
    bound, _, _ = level_average_bound(rr**2, 2 * rr, mesh.weights, 4.0)
    assert abs(bound - 8.0 / 6.0) <= 1e-6
    _passline(9, f"discrete estimators (witness dev {worst_wit:.1e}, eigenvalue "
                 f"bound violation {max(worst_lam, 0.0):.1e}), ball profiles "
                 f"within 5%, disc level bound 8/(3s)")


def test_criterion_10_parser_and_determinism():
    rng = np.random.default_rng(8)
    exprs = _random_expressions(rng, 20)
    for src in exprs:
        ast = parse(src, 2)
        p = rng.uniform(0.3, 0.8, size=2)
        jt = eval_jet2(ast, p)
        h = 1e-5
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            fd = (eval_jet2(ast, p + e).value - eval_jet2(ast, p - e).value) / (2 * h)
            assert abs(fd - jt.grad[i]) / max(1.0, abs(jt.grad[i])) < 1e-6
        for i in range(2):
            for j in range(2):
                ei, ej = np.zeros(2), np.zeros(2)
                ei[i] = h
                ej[j] = h
                fd = (eval_jet2(ast, p + ei + ej).value - eval_jet2(ast, p + ei - ej).value
                      - eval_jet2(ast, p - ei + ej).value
                      + eval_jet2(ast, p - ei - ej).value) / (4 * h * h)
                assert abs(fd - jt.hess[i, j]) / max(1.0, abs(jt.hess[i, j])) < 1e-4
    with pytest.raises(ParseError) as err:
        parse("x1 + * x2", 2)
    assert err.value.offset == 5
    a = run_suite(SuiteConfig(suite="graph-sec51", seed=11))
    b = run_suite(SuiteConfig(suite="graph-sec51", seed=11))
    assert a.to_json(include_meta=False) == b.to_json(include_meta=False)
    _passline(10, "20 random expressions match finite differences; malformed "
                  "input reports byte offsets; reports byte-stable under a seed")


def _random_expressions(rng, count):
    unary = ["sin", "cos", "sinh", "tanh", "exp", "atan"]
    out = []
    for _ in range(count):
        u1, u2 = rng.choice(unary, size=2)
        c1, c2, c3 = np.round(rng.uniform(0.2, 1.5, size=3), 3)
        template = int(rng.integers(4))
        if template == 0:
            out.append(f"{u1}({c1}*x1) * {u2}({c2}*x2) + {c3}*x1^2")
        elif template == 1:
            out.append(f"{u1}(x1*x2) - {c1}*x2^3 + sqrt({c2} + x1^2)")
        elif template == 2:
            out.append(f"log({c1} + x1^2 + x2^2) + {u2}({c2}*x1)/( {c3} + x2^2)")
        else:
            out.append(f"(x1 + {c1}*x2)^3 - {u1}({c2}*x2)")
    return out
