import numpy as np
import pytest

from caliblab.calibrations import kaehler_calibration
from caliblab.immersion import GraphImmersion
from caliblab.kahlercal import (EqualAngleReport, equal_angle_plane, equal_angle_report,
                                kaehler_angles_of_plane, kahler_angles,
                                positivity_window_delta, split_second_form,
                                _complete_orthonormal)
from caliblab.subgeom import ConstantAmbientForm, phi_matrix


def test_complex_plane():
    t = np.eye(8)[:4]
    d = kaehler_angles_of_plane(t, _complete_orthonormal(t))
    assert np.allclose(d.angles, 1.0)
    assert d.cos_theta == 1.0
    assert d.equal


def test_lagrangian_plane():
    d = kaehler_angles_of_plane(np.eye(8)[[0, 2, 4, 6]])
    assert np.abs(d.angles).max() < 1e-14
    assert d.cos_theta == 0.0
    assert d.J_w is None


def test_equal_angle_plane_generator():
    rng = np.random.default_rng(0)
    for ca in (0.9, 0.5, 0.2):
        tangent, normal = equal_angle_plane(ca, rng)
        d = kaehler_angles_of_plane(tangent, normal)
        assert np.abs(d.angles - ca).max() < 1e-12
        assert d.equal
        assert np.isclose(d.cos_theta, ca * ca)


def test_conformality_coefficient():
    rng = np.random.default_rng(1)
    form = ConstantAmbientForm(kaehler_calibration(2).form)
    for ca in (0.85, 0.5, 0.25):
        tangent, normal = equal_angle_plane(ca, rng)
        d = kaehler_angles_of_plane(tangent, normal)
        phi = phi_matrix(form, None, tangent, normal)
        coef = (1.0 - d.cos_theta) * d.cos_theta
        assert np.abs(phi.T @ phi - coef * np.eye(4)).max() < 1e-12


def test_split_is_orthogonal_decomposition():
    rng = np.random.default_rng(2)
    tangent, normal = equal_angle_plane(0.7, rng)
    d = kaehler_angles_of_plane(tangent, normal)
    h = rng.standard_normal((4, 4, 4))
    hc, ha = split_second_form(h, d.J_w, d.J_perp)
    assert np.abs(hc + ha - h).max() < 1e-12
    assert abs(float(np.sum(hc * ha))) < 1e-12


def _complex_bilinear(rng):
    c = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
    c = 0.5 * (c + c.transpose(0, 2, 1))
    h = np.zeros((4, 4, 4))
    basis = np.eye(4)

    def z_of(v):
        return np.array([v[0] + 1j * v[1], v[2] + 1j * v[3]])

    for a in range(4):
        for b in range(4):
            val = np.einsum("ajk,j,k->a", c, z_of(basis[a]), z_of(basis[b]))
            h[:, a, b] = [val[0].real, val[0].imag, val[1].real, val[1].imag]
    return h


def test_complex_bilinear_form_annihilates_q():
    rng = np.random.default_rng(3)
    tangent, normal = equal_angle_plane(1.0)
    h = _complex_bilinear(rng)
    rep = equal_angle_report(tangent, normal, h)
    assert abs(rep.q_tilde) < 1e-12
    assert rep.norm_a < 1e-12


def test_remainder_bound_and_window():
    rng = np.random.default_rng(4)
    hits = 0
    for _ in range(120):
        ca = float(np.sqrt(rng.uniform(11.0 / 13.0 + 1e-9, 11.0 / 12.0)))
        tangent, normal = equal_angle_plane(ca, rng)
        h = rng.standard_normal((4, 4, 4))
        h = 0.5 * (h + h.transpose(0, 2, 1))
        rep = equal_angle_report(tangent, normal, h)
        assert abs(rep.rho) <= rep.rho_bound + 1e-10
        if rep.certified_delta is not None and rep.certified_delta > 0:
            hits += 1
            assert rep.q_tilde >= rep.certified_delta * float(np.sum(h * h)) - 1e-9
    assert hits > 0


def test_window_boundaries():
    assert positivity_window_delta(0.8, 1.0, 1.0) is None   # below the window
    assert positivity_window_delta(0.95, 1.0, 1.0) is None  # above the window
    top = positivity_window_delta(0.9, 0.0, 1.0)
    assert np.isclose(top, (13 * 0.9 - 11) / 0.9)


def test_angles_of_antiholomorphic_graph():
    for lam in (0.5, 1.0, 2.0):
        imm = GraphImmersion([f"{lam!r}*x1", f"{-lam!r}*x2"], 2)
        d = kahler_angles(imm, [0.1, 0.2])
        # brute 2x2 oracle for the pulled-back form
        expected = abs(1.0 - lam * lam) / (1.0 + lam * lam)
        assert abs(float(d.angles[0]) - expected) < 1e-12


def test_point_report_from_immersion():
    from caliblab.kahlercal import kahler_angle_report

    # linear anti-holomorphic graph: equal angles, totally geodesic
    imm = GraphImmersion(["0.5*x1", "-0.5*x2", "0.5*x3", "-0.5*x4"], 4)
    rep = kahler_angle_report(imm, [0.1, 0.2, -0.1, 0.05])
    assert rep.equal
    assert np.allclose(rep.angles, 0.6)
    assert rep.norm_c == 0.0 and rep.norm_a == 0.0
    assert rep.split_skipped is None
    # curved anti-holomorphic graph: nonzero second form gets split
    imm2 = GraphImmersion(["0.5*x1 + 0.05*x1^2", "-0.5*x2", "0.5*x3", "-0.5*x4"], 4)
    rep2 = kahler_angle_report(imm2, [0.1, 0.2, -0.1, 0.05])
    if rep2.equal:
        assert rep2.norm_c is not None and rep2.norm_a is not None
    # angle-zero point: split skipped with a reason
    lag = GraphImmersion(["x1", "-x2", "x3", "-x4"], 4)
    rep3 = kahler_angle_report(lag, [0.1, 0.2, -0.1, 0.05])
    assert np.abs(rep3.angles).max() < 1e-12
    assert rep3.split_skipped is not None


def test_equal_angle_report_rejects_generic_plane():
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((8, 4)))
    tangent = q.T
    normal = _complete_orthonormal(tangent)
    with pytest.raises(ValueError):
        equal_angle_report(tangent, normal, np.zeros((4, 4, 4)))
