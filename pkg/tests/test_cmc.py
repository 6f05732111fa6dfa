import numpy as np
import pytest

from caliblab.cmc import cmc_profile, cmc_verify, unit_normal_graph
from caliblab.immersion import CmcHyperbolicGraph, CmcProfile, sinh_power_integral
from caliblab.subgeom import ProductVolumeForm, frame_at


def test_sinh_power_integral():
    from scipy.integrate import quad

    for k in (1, 2, 3, 5):
        for r in (0.3, 1.0, 2.5):
            ref, _ = quad(lambda t: np.sinh(t) ** k, 0.0, r, epsabs=1e-13)
            assert abs(sinh_power_integral(k, r) - ref) < 1e-10


def test_profile_zero_is_slice():
    prof = CmcProfile(2, 0.0)
    assert prof.value(1.7) == 0.0
    chk = cmc_verify(2, 0.0, samples=10)
    assert chk.max_H_residual < 1e-12
    assert chk.min_cos_theta > 1.0 - 1e-12


def test_profile_closed_form_m2():
    prof = CmcProfile(2, 1.0)
    for r in (0.1, 0.5, 1.0, 2.3, 4.0):
        assert abs(prof.value(r) - 2.0 * (np.cosh(r / 2.0) - 1.0)) < 1e-8


def test_profile_riemann_oracle_m3():
    # independent midpoint Riemann sum with the explicit m=3 antiderivative
    n = 1_000_000
    ts = (np.arange(n) + 0.5) / n
    integral = (np.sinh(ts) * np.cosh(ts) - ts) / 2.0
    q = integral / np.sinh(ts) ** 2
    brute = float(np.sum(q / np.sqrt(1.0 - q * q)) / n)
    assert abs(CmcProfile(3, 1.0).value(1.0) - brute) < 1e-8


def test_profile_parameter_domain():
    with pytest.raises(ValueError):
        CmcProfile(2, 1.5)
    with pytest.raises(ValueError):
        cmc_profile(3, 2.5, 1.0)
    with pytest.raises(ValueError):
        CmcProfile(2, 1.0).value(-1.0)
    # the boundary case |c| = m-1 stays admissible at finite radius
    assert np.isfinite(CmcProfile(3, 2.0).value(1.5))


def test_inner_ratio_stays_admissible():
    prof = CmcProfile(2, 1.0)
    for r in np.linspace(0.01, 8.0, 50):
        assert abs(prof.q(r)) < 1.0


def test_mean_curvature_family():
    for m, c in ((2, 0.5), (2, 1.0), (3, 1.5)):
        chk = cmc_verify(m, c, samples=50, seed=0)
        assert chk.max_H_residual < 1e-6
        assert chk.bound_ok
        assert chk.min_cos_theta > chk.angle_bound


def test_unit_normal_is_unit_and_normal():
    imm = CmcHyperbolicGraph(2, 1.0)
    rng = np.random.default_rng(0)
    for _ in range(5):
        u = rng.uniform(-0.5, 0.5, size=2)
        nu = unit_normal_graph(imm, u)
        fp = frame_at(imm, u)
        gbar = imm.ambient.metric(fp.point)
        assert abs(nu @ gbar @ nu - 1.0) < 1e-12
        assert np.abs(fp.tangent @ gbar @ nu).max() < 1e-12


def test_graph_jets_match_finite_differences():
    imm = CmcHyperbolicGraph(3, 1.5)
    u = np.array([0.2, -0.1, 0.25])
    F, dF, d2F = imm.jet(u)
    h = 1e-5
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        fd = (imm.jet(u + e)[0] - imm.jet(u - e)[0]) / (2 * h)
        assert np.abs(fd - dF[:, i]).max() < 1e-8
        fd2 = (imm.jet(u + e)[1] - imm.jet(u - e)[1]) / (2 * h)
        assert np.abs(fd2 - d2F[:, :, i].T.T).max() < 1e-7


def test_chart_boundary():
    imm = CmcHyperbolicGraph(2, 1.0)
    with pytest.raises(ValueError):
        imm.jet(np.array([0.8, 0.7]))


def test_offset_invariance():
    # vertical translates share curvature and angle
    a = CmcHyperbolicGraph(2, 1.0)
    b = CmcHyperbolicGraph(2, 1.0, offset=2.5)
    u = np.array([0.3, 0.2])
    fa = frame_at(a, u, omega=ProductVolumeForm(a.ambient))
    fb = frame_at(b, u, omega=ProductVolumeForm(b.ambient))
    assert abs(fa.cos_theta - fb.cos_theta) < 1e-14
    assert abs(fa.norm_H() - fb.norm_H()) < 1e-14
