import numpy as np
import pytest

from caliblab.calibrations import (catalog, cayley_calibration, complex_structure,
                                   kaehler_calibration, make_calibration,
                                   quaternionic_calibration, quaternionic_structures,
                                   special_lagrangian_calibration, volume_calibration)
from caliblab.comass import comass
from caliblab.multivector import MultiVector
from caliblab.octonion import triple_cross


def test_catalog_model_frames():
    for cal in catalog():
        assert cal.model_value() >= 1.0 - 1e-9
        assert cal.form.grade == cal.m
        assert cal.dim == cal.m + cal.n


def test_catalog_comass_one():
    for cal in catalog():
        res = comass(cal.form, restarts=80, seed=0)
        assert abs(res.value - 1.0) < 1e-3, cal.name


def test_quaternionic_structure_algebra():
    for n in (1, 2):
        I, J, K = quaternionic_structures(n)
        eye = np.eye(4 * n)
        assert np.allclose(I @ I, -eye)
        assert np.allclose(J @ J, -eye)
        assert np.allclose(I @ J, K)
        assert np.allclose(I @ J, -J @ I)
        for S in (I, J, K):
            assert np.allclose(S.T @ S, eye)


def test_complex_structure():
    J = complex_structure(3)
    assert np.allclose(J @ J, -np.eye(6))
    assert np.allclose(J.T @ J, np.eye(6))


def test_volume_arguments():
    with pytest.raises(ValueError):
        volume_calibration(0, 1)
    cal = volume_calibration(3, 2)
    assert cal.form.evaluate(np.eye(5)[:3]) == 1.0


def test_kaehler_on_lagrangian_vanishes():
    kae = kaehler_calibration(2)
    lagrangian = np.eye(8)[[0, 2, 4, 6]]
    assert abs(kae.form.evaluate(lagrangian)) < 1e-15


def test_kaehler_wider_ambient():
    cal = kaehler_calibration(1, ambient_complex_dim=3)
    assert cal.dim == 6
    assert cal.model_value() == 1.0


def test_special_lagrangian_vanishes_on_complex_line():
    # the real form vanishes on complex lines for k >= 2
    sl = special_lagrangian_calibration(2)
    complex_line = np.eye(4)[:2]
    assert abs(sl.form.evaluate(complex_line)) < 1e-15
    assert sl.model_value() == 1.0


def test_quaternionic_line_value():
    cal = quaternionic_calibration(2)
    I, J, K = quaternionic_structures(2)
    rng = np.random.default_rng(0)
    for _ in range(10):
        X = rng.standard_normal(8)
        X /= np.linalg.norm(X)
        frame = np.stack([X, I @ X, J @ X, K @ X])
        assert abs(cal.form.evaluate(frame) - 1.0) < 1e-12


def test_quaternionic_n1_is_signed_volume():
    cal = quaternionic_calibration(1)
    val = cal.form.evaluate(np.eye(4))
    assert abs(abs(val) - 1.0) < 1e-15


def test_cayley_matches_triple_cross():
    cay = cayley_calibration()
    rng = np.random.default_rng(1)
    for _ in range(30):
        x, y, z, w = rng.standard_normal((4, 8))
        raw = x @ triple_cross(y, z, w)
        assert abs(raw - cay.form.evaluate(np.stack([x, y, z, w]))) < 1e-12


def test_coassociative_is_dual():
    phi = make_calibration("associative")
    psi = make_calibration("coassociative")
    assert np.array_equal(phi.form.hodge().coeffs, psi.form.coeffs)


def test_associative_table_value():
    phi = make_calibration("associative")
    assert phi.form.evaluate(np.eye(7)[:3]) == 1.0


def test_make_calibration_errors():
    with pytest.raises(ValueError, match="unknown"):
        make_calibration("nope")
    with pytest.raises(ValueError):
        make_calibration("quaternionic", n=0)


def test_forms_are_unit_normalized_where_known():
    # the volume form has unit norm; the quaternionic form does not
    vol = volume_calibration(2, 2)
    assert np.isclose(np.linalg.norm(vol.form.coeffs), 1.0)
    quat = quaternionic_calibration(2)
    assert np.linalg.norm(quat.form.coeffs) > 1.0
