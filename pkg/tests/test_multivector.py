import numpy as np
import pytest

from caliblab.multivector import Frame, MultiVector, compound_matrix, random_frames


def test_basis_wedge():
    e1 = MultiVector.basis_blade(3, (0,))
    e2 = MultiVector.basis_blade(3, (1,))
    w = e1.wedge(e2)
    assert w.grade == 2
    assert w.coeffs[0] == 1.0  # coefficient of e_{01}


def test_wedge_self_vanishes():
    rng = np.random.default_rng(0)
    v = MultiVector.from_vector(rng.standard_normal(5))
    assert v.wedge(v).norm() == 0.0


def test_wedge_sign_bookkeeping():
    # (e1^e2)^(e3^e4) = e1234 = -(e1^e3)^(e2^e4), via permutation parity
    a = MultiVector.basis_blade(4, (0, 1)).wedge(MultiVector.basis_blade(4, (2, 3)))
    b = MultiVector.basis_blade(4, (0, 2)).wedge(MultiVector.basis_blade(4, (1, 3)))
    assert a.coeffs[-1] == 1.0
    assert np.allclose(a.coeffs, -b.coeffs)


def test_wedge_graded_anticommutative():
    rng = np.random.default_rng(1)
    for k, l in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        a = MultiVector(6, k, rng.standard_normal(len(MultiVector(6, k).coeffs)))
        b = MultiVector(6, l, rng.standard_normal(len(MultiVector(6, l).coeffs)))
        ab = a.wedge(b)
        ba = b.wedge(a)
        assert np.allclose(ab.coeffs, (-1.0) ** (k * l) * ba.coeffs)


def test_wedge_dimension_errors():
    with pytest.raises(ValueError, match="dimension"):
        MultiVector.basis_blade(3, (0,)).wedge(MultiVector.basis_blade(4, (0,)))
    with pytest.raises(ValueError, match="overflow"):
        MultiVector.basis_blade(3, (0, 1)).wedge(MultiVector.basis_blade(3, (0, 1)))


def test_inner_product_orthonormal_blades():
    a = MultiVector.basis_blade(5, (0, 2))
    b = MultiVector.basis_blade(5, (0, 2))
    c = MultiVector.basis_blade(5, (1, 2))
    assert a.inner(b) == 1.0
    assert a.inner(c) == 0.0


def test_hodge_r3():
    e1 = MultiVector.basis_blade(3, (0,))
    star = e1.hodge()
    expected = MultiVector.basis_blade(3, (1, 2))
    assert np.allclose(star.coeffs, expected.coeffs)


def test_hodge_double_star():
    rng = np.random.default_rng(2)
    for dim, k in [(4, 2), (5, 2), (7, 3), (6, 1)]:
        a = MultiVector(dim, k, rng.standard_normal(len(MultiVector(dim, k).coeffs)))
        twice = a.hodge().hodge()
        assert np.allclose(twice.coeffs, (-1.0) ** (k * (dim - k)) * a.coeffs)


def test_hodge_defining_property():
    # a ^ *b = <a, b> vol
    rng = np.random.default_rng(3)
    dim, k = 5, 2
    a = MultiVector(dim, k, rng.standard_normal(10))
    b = MultiVector(dim, k, rng.standard_normal(10))
    wedge = a.wedge(b.hodge())
    assert np.isclose(wedge.coeffs[0], a.inner(b))


def test_hodge_isometry():
    rng = np.random.default_rng(4)
    a = MultiVector(6, 3, rng.standard_normal(20))
    assert np.isclose(a.hodge().norm(), a.norm())


def test_hodge_frame_convention():
    # on a direct frame, the star of the k-th vector is the signed wedge of
    # the others: *X_2 = -X_1 ^ X_3 ^ X_4 for a 4-frame
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    frame = Frame(q.T)
    x2 = MultiVector.from_vector(frame[1])
    star = x2.hodge(frame)
    expected = -1.0 * MultiVector.from_vectors(frame.vectors[[0, 2, 3]])
    assert np.allclose(star.coeffs, expected.coeffs, atol=1e-12)


def test_hodge_degenerate_orientation():
    bad = np.eye(3)
    bad[1] = bad[0]
    with pytest.raises(ValueError):
        MultiVector.basis_blade(3, (0,)).hodge(Frame(np.eye(3), check=False).__class__(bad, check=False))


def test_frame_orthonormality_enforced():
    with pytest.raises(ValueError, match="orthonormal"):
        Frame(np.array([[1.0, 0.0], [1.0, 0.0]]))


def test_evaluate_on_vectors():
    rng = np.random.default_rng(6)
    form = MultiVector(5, 3, rng.standard_normal(10))
    vs = rng.standard_normal((3, 5))
    direct = form.evaluate(vs)
    assert np.isclose(direct, form.inner(MultiVector.from_vectors(vs)))
    # alternating
    swapped = vs[[1, 0, 2]]
    assert np.isclose(form.evaluate(swapped), -direct)


def test_compound_matrix_is_wedge_action():
    rng = np.random.default_rng(7)
    M = rng.standard_normal((4, 4))
    comp = compound_matrix(M, 2)
    v = rng.standard_normal((2, 4))
    lhs = MultiVector.from_vectors(v @ M.T).coeffs
    rhs = comp @ MultiVector.from_vectors(v).coeffs
    assert np.allclose(lhs, rhs)


def test_random_frames_orthonormal():
    frames = random_frames(6, 3, 11, np.random.default_rng(8))
    grams = np.einsum("bni,bnj->bij", frames, frames)
    assert np.abs(grams - np.eye(3)).max() < 1e-12
