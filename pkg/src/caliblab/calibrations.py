"""Catalog of constant-coefficient calibration forms in the flat model chart.

Each entry carries the form, its rank m, the complementary dimension n and a
model frame on which the form evaluates to exactly 1.  The blockwise
quaternionic structures I, J, K act as right multiplication by -i, -j, -k,
which makes them commute with left-quaternionic matrices (the symmetry
group sampler in the quaternionic module relies on this).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .multivector import Frame, MultiVector, index_subsets, subset_position
from .octonion import imaginary_embed, octonion_mul, triple_cross

# right multiplication by -i, -j, -k on one quaternion block (1, i, j, k);
# rows below list the images of the basis vectors, the transpose stores
# them as columns
RIGHT_I = np.array(
    [[0.0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
).T
RIGHT_J = np.array(
    [[0.0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
).T
RIGHT_K = np.array(
    [[0.0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
).T


def quaternionic_structures(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Blockwise I, J, K on R^{4n} with I J = K and I^2 = -Id."""
    if n < 1:
        raise ValueError("quaternionic structures need n >= 1")
    eye = np.eye(n)
    return (
        np.kron(eye, RIGHT_I),
        np.kron(eye, RIGHT_J),
        np.kron(eye, RIGHT_K),
    )


def complex_structure(k: int) -> np.ndarray:
    """Standard complex structure on R^{2k}: e_{2i} -> e_{2i+1}."""
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(k), block)


def kaehler_form(J: np.ndarray) -> MultiVector:
    """Two-form w(X, Y) = <J X, Y> of an orthogonal (almost) complex structure."""
    dim = J.shape[0]
    w = MultiVector(dim, 2)
    pos = subset_position(dim, 2)
    for (i, j), p in pos.items():
        w.coeffs[p] = J[j, i]
    return w


@dataclass
class Calibration:
    """A comass-one constant form with a frame it calibrates."""

    name: str
    form: MultiVector
    m: int
    n: int
    model_frame: Frame

    @property
    def dim(self) -> int:
        return self.form.dim

    def model_value(self) -> float:
        return self.model_frame.orientation * self.form.evaluate(
            self.model_frame.vectors
        )


def _frame(rows) -> Frame:
    return Frame(np.asarray(rows, dtype=float))


def volume_calibration(m: int, n: int) -> Calibration:
    if m < 1 or n < 0:
        raise ValueError("volume calibration needs m >= 1, n >= 0")
    dim = m + n
    form = MultiVector.basis_blade(dim, tuple(range(m)))
    frame = _frame(np.eye(dim)[:m])
    return Calibration("volume", form, m, n, frame)


def kaehler_calibration(k: int, ambient_complex_dim: int | None = None) -> Calibration:
    """w^k / k! on C^K; calibrates complex k-planes."""
    if k < 1:
        raise ValueError("kaehler calibration needs k >= 1")
    K = 2 * k if ambient_complex_dim is None else ambient_complex_dim
    if K < k:
        raise ValueError("ambient complex dimension must be at least k")
    dim = 2 * K
    w = kaehler_form(complex_structure(K))
    form = w
    for _ in range(k - 1):
        form = form.wedge(w)
    form = form / factorial(k)
    frame = _frame(np.eye(dim)[: 2 * k])
    return Calibration("kaehler", form, 2 * k, dim - 2 * k, frame)


def special_lagrangian_calibration(k: int) -> Calibration:
    """Re(dz^1 ^ .. ^ dz^k) on C^k, z_j = x_{2j} + i x_{2j+1}."""
    if k < 1:
        raise ValueError("special lagrangian calibration needs k >= 1")
    dim = 2 * k
    form = MultiVector(dim, k)
    pos = subset_position(dim, k)
    # expand the product of (dx_{2j} + i dy_{2j+1}); keep the real part
    for choice in range(2**k):
        imag_count = bin(choice).count("1")
        if imag_count % 2 != 0:
            continue
        sign = (-1) ** (imag_count // 2)  # i^imag_count, real part
        idx = tuple(2 * j + ((choice >> j) & 1) for j in range(k))
        from .multivector import sort_sign

        s, sorted_idx = sort_sign(idx)
        form.coeffs[pos[sorted_idx]] += sign * s
    frame = _frame(np.eye(dim)[[2 * j for j in range(k)]])
    return Calibration("special_lagrangian", form, k, k, frame)


def quaternionic_calibration(n: int) -> Calibration:
    """Fundamental 4-form (w_I^2 + w_J^2 + w_K^2)/6 on R^{4n}."""
    if n < 1:
        raise ValueError("quaternionic calibration needs n >= 1")
    I, J, K = quaternionic_structures(n)
    form = MultiVector(4 * n, 4)
    for S in (I, J, K):
        w = kaehler_form(S)
        form = form + w.wedge(w)
    form = form / 6.0
    X = np.eye(4 * n)[0]
    frame = _frame(np.stack([X, I @ X, J @ X, K @ X]))
    return Calibration("quaternionic", form, 4, 4 * n - 4, frame)


def cayley_calibration() -> Calibration:
    """4-form <x, y x z x w> (triple cross product) on the octonions."""
    form = MultiVector(8, 4)
    pos = subset_position(8, 4)
    basis = np.eye(8)
    for idx in index_subsets(8, 4):
        a, b, c, d = idx
        val = float(basis[a] @ triple_cross(basis[b], basis[c], basis[d]))
        form.coeffs[pos[idx]] = val
    frame = _frame(np.eye(8)[:4])
    return Calibration("cayley", form, 4, 4, frame)


def associative_calibration() -> Calibration:
    """3-form <x, y z> on the imaginary octonions R^7."""
    form = MultiVector(7, 3)
    pos = subset_position(7, 3)
    basis = np.eye(7)
    for idx in index_subsets(7, 3):
        a, b, c = idx
        prod = octonion_mul(imaginary_embed(basis[b]), imaginary_embed(basis[c]))
        form.coeffs[pos[idx]] = float(imaginary_embed(basis[a]) @ prod)
    frame = _frame(np.eye(7)[:3])
    return Calibration("associative", form, 3, 4, frame)


def coassociative_calibration() -> Calibration:
    """Hodge dual of the associative 3-form in R^7."""
    phi = associative_calibration()
    form = phi.form.hodge()
    # the dual of the associative model plane carries the value 1
    frame = _frame(np.eye(7)[3:])
    cal = Calibration("coassociative", form, 4, 3, frame)
    if cal.model_value() < 0:
        frame = Frame(frame.vectors, orientation=-1)
        cal = Calibration("coassociative", form, 4, 3, frame)
    return cal


_BUILDERS = {
    "volume": volume_calibration,
    "kaehler": kaehler_calibration,
    "special_lagrangian": special_lagrangian_calibration,
    "quaternionic": quaternionic_calibration,
    "cayley": cayley_calibration,
    "associative": associative_calibration,
    "coassociative": coassociative_calibration,
}


def make_calibration(kind: str, **params) -> Calibration:
    """Catalog constructor; ``kind`` is one of volume, kaehler,
    special_lagrangian, quaternionic, cayley, associative, coassociative."""
    kind = kind.lower().replace("-", "_")
    if kind == "kahler":
        kind = "kaehler"
    if kind not in _BUILDERS:
        raise ValueError(f"unknown calibration kind {kind!r}")
    return _BUILDERS[kind](**params)


def catalog() -> list[Calibration]:
    """The seven standard entries at their default parameters."""
    return [
        volume_calibration(2, 1),
        kaehler_calibration(2),
        special_lagrangian_calibration(3),
        quaternionic_calibration(2),
        cayley_calibration(),
        associative_calibration(),
        coassociative_calibration(),
    ]
