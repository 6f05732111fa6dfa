"""Graded exterior algebra over R^N with constant coefficients.

A k-vector is stored as the coefficient array over the basis of strictly
increasing k-index blades e_{i1..ik}, listed in lexicographic order.  Basis
blades are declared orthonormal, so the inner product on each grade is the
Euclidean one on coefficients and every sign in the algebra reduces to a
permutation parity relative to increasing index order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def index_subsets(dim: int, grade: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing ``grade``-subsets of range(dim), lex order."""
    return tuple(combinations(range(dim), grade))


@lru_cache(maxsize=None)
def subset_position(dim: int, grade: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(index_subsets(dim, grade))}


@lru_cache(maxsize=None)
def subset_array(dim: int, grade: int) -> np.ndarray:
    """Same subsets as an int64 array of shape (C(dim,grade), grade)."""
    arr = np.array(index_subsets(dim, grade), dtype=np.int64)
    return arr.reshape(comb(dim, grade), grade)


def sort_sign(indices) -> tuple[int, tuple[int, ...]]:
    """Parity of the permutation sorting ``indices``; 0 if repeats occur."""
    idx = list(indices)
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] == idx[j]:
                return 0, tuple(idx)
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


@lru_cache(maxsize=None)
def merge_sign_table(dim: int, k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    """Wedge bookkeeping for grades (k, l) in dimension ``dim``.

    Returns (signs, targets): for each pair (i, j) of source basis blades,
    the parity of merging them into one increasing (k+l)-blade and the
    position of that blade, with sign 0 for overlapping index sets.
    """
    subs_k = index_subsets(dim, k)
    subs_l = index_subsets(dim, l)
    pos = subset_position(dim, k + l)
    signs = np.zeros((len(subs_k), len(subs_l)), dtype=np.int64)
    targets = np.zeros((len(subs_k), len(subs_l)), dtype=np.int64)
    for i, I in enumerate(subs_k):
        for j, J in enumerate(subs_l):
            s, merged = sort_sign(I + J)
            if s != 0:
                signs[i, j] = s
                targets[i, j] = pos[merged]
    return signs, targets


@lru_cache(maxsize=None)
def complement_table(dim: int, grade: int) -> tuple[np.ndarray, np.ndarray]:
    """Hodge data: for each blade, the complementary blade index and the
    parity of the permutation (I, I^c) of (0..dim-1)."""
    subs = index_subsets(dim, grade)
    pos_c = subset_position(dim, dim - grade)
    signs = np.zeros(len(subs), dtype=np.int64)
    targets = np.zeros(len(subs), dtype=np.int64)
    full = set(range(dim))
    for i, I in enumerate(subs):
        comp = tuple(sorted(full - set(I)))
        s, _ = sort_sign(I + comp)
        signs[i] = s
        targets[i] = pos_c[comp]
    return signs, targets


class MultiVector:
    """Constant-coefficient k-vector / k-form on R^dim."""

    __slots__ = ("dim", "grade", "coeffs")

    def __init__(self, dim: int, grade: int, coeffs=None):
        if not 0 <= grade <= dim:
            raise ValueError(f"grade {grade} out of range for dimension {dim}")
        n = comb(dim, grade)
        if coeffs is None:
            coeffs = np.zeros(n)
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (n,):
            raise ValueError(f"expected {n} coefficients, got {coeffs.shape}")
        self.dim = dim
        self.grade = grade
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(dim: int, grade: int) -> "MultiVector":
        return MultiVector(dim, grade)

    @staticmethod
    def basis_blade(dim: int, indices) -> "MultiVector":
        """e_{i1} ^ ... ^ e_{ik} for a (not necessarily sorted) index tuple."""
        sign, sorted_idx = sort_sign(indices)
        mv = MultiVector(dim, len(sorted_idx))
        if sign != 0:
            mv.coeffs[subset_position(dim, mv.grade)[sorted_idx]] = sign
        return mv

    @staticmethod
    def from_vector(v) -> "MultiVector":
        v = np.asarray(v, dtype=float)
        return MultiVector(v.shape[0], 1, v.copy())

    @staticmethod
    def from_vectors(vectors) -> "MultiVector":
        """Wedge of the rows of ``vectors`` ((k, dim) array): the coefficients
        are the k x k minors of the matrix."""
        vectors = np.asarray(vectors, dtype=float)
        k, dim = vectors.shape
        subs = subset_array(dim, k)
        minors = np.linalg.det(vectors.T[subs, :]) if k > 0 else np.ones(1)
        return MultiVector(dim, k, minors)

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "MultiVector") -> "MultiVector":
        self._check_same(other)
        return MultiVector(self.dim, self.grade, self.coeffs + other.coeffs)

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        self._check_same(other)
        return MultiVector(self.dim, self.grade, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "MultiVector":
        return MultiVector(self.dim, self.grade, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "MultiVector":
        return MultiVector(self.dim, self.grade, self.coeffs / float(scalar))

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.dim, self.grade, -self.coeffs)

    def _check_same(self, other: "MultiVector") -> None:
        if self.dim != other.dim or self.grade != other.grade:
            raise ValueError(
                f"mismatched multivectors: dim/grade ({self.dim},{self.grade})"
                f" vs ({other.dim},{other.grade})"
            )

    def wedge(self, other: "MultiVector") -> "MultiVector":
        if self.dim != other.dim:
            raise ValueError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        grade = self.grade + other.grade
        if grade > self.dim:
            raise ValueError(
                f"grade overflow: {self.grade}+{other.grade} > {self.dim}"
            )
        signs, targets = merge_sign_table(self.dim, self.grade, other.grade)
        out = np.zeros(comb(self.dim, grade))
        contrib = signs * np.outer(self.coeffs, other.coeffs)
        np.add.at(out, targets.ravel(), contrib.ravel())
        return MultiVector(self.dim, grade, out)

    def inner(self, other: "MultiVector") -> float:
        self._check_same(other)
        return float(self.coeffs @ other.coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def hodge(self, orientation: "Frame | None" = None) -> "MultiVector":
        """Hodge star fixed by a * e_I = <a, e_I> vol for the given
        orientation (standard orientation of R^dim when omitted).

        A full orthonormal frame may be passed; the star is then computed in
        that frame's blade basis, so e.g. the star of a frame vector X_k is
        (-1)^(k-1) X_1 ^ .. ^ X_{k-1} ^ X_{k+1} ^ .. ^ X_m.
        """
        if orientation is None:
            return self._hodge_standard(+1)
        if orientation.dim != self.dim or len(orientation) != self.dim:
            raise ValueError("orientation frame must span the full space")
        basis = orientation.vectors
        gram = basis @ basis.T
        if np.max(np.abs(gram - np.eye(self.dim))) > 1e-10:
            raise ValueError("degenerate orientation frame")
        # pass to frame coordinates, star there, come back
        compound = compound_matrix(basis.T, self.grade)
        in_frame = MultiVector(self.dim, self.grade, compound.T @ self.coeffs)
        starred = in_frame._hodge_standard(orientation.orientation)
        compound_c = compound_matrix(basis.T, self.dim - self.grade)
        return MultiVector(self.dim, starred.grade, compound_c @ starred.coeffs)

    def _hodge_standard(self, orient_sign: int) -> "MultiVector":
        signs, targets = complement_table(self.dim, self.grade)
        out = np.zeros(comb(self.dim, self.dim - self.grade))
        out[targets] = orient_sign * signs * self.coeffs
        return MultiVector(self.dim, self.dim - self.grade, out)

    def evaluate(self, vectors) -> float:
        """Value of the k-form on k vectors (rows of ``vectors``)."""
        vectors = np.asarray(vectors, dtype=float)
        if vectors.shape != (self.grade, self.dim):
            raise ValueError(
                f"expected {self.grade} vectors of dimension {self.dim}"
            )
        return self.inner(MultiVector.from_vectors(vectors))

    def to_vector(self) -> np.ndarray:
        if self.grade != 1:
            raise ValueError("only grade-1 multivectors convert to vectors")
        return self.coeffs.copy()

    def __repr__(self) -> str:
        return f"MultiVector(dim={self.dim}, grade={self.grade})"


def compound_matrix(mat: np.ndarray, grade: int) -> np.ndarray:
    """k-th compound of a square matrix: the induced map on grade-k blades."""
    dim = mat.shape[0]
    subs = index_subsets(dim, grade)
    n = len(subs)
    out = np.empty((n, n))
    for j, J in enumerate(subs):
        cols = mat[:, J]
        out[:, j] = np.linalg.det(cols[subset_array(dim, grade), :]) if grade else 1.0
    return out


class Frame:
    """Ordered tuple of orthonormal vectors in R^dim with an orientation sign."""

    __slots__ = ("dim", "vectors", "orientation")

    def __init__(self, vectors, orientation: int = 1, check: bool = True):
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim != 2:
            raise ValueError("frame expects a (count, dim) array of rows")
        self.vectors = vectors
        self.dim = vectors.shape[1]
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.orientation = orientation
        if check:
            gram = vectors @ vectors.T
            if np.max(np.abs(gram - np.eye(len(vectors)))) > 1e-12:
                raise ValueError("frame vectors are not orthonormal to 1e-12")

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.vectors[k]

    def blade(self) -> MultiVector:
        return self.orientation * MultiVector.from_vectors(self.vectors)

    @staticmethod
    def standard(dim: int, count: int | None = None) -> "Frame":
        count = dim if count is None else count
        return Frame(np.eye(dim)[:count], check=False)

    def __repr__(self) -> str:
        return f"Frame(dim={self.dim}, count={len(self)}, orientation={self.orientation:+d})"


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    return a.wedge(b)


def hodge(a: MultiVector, orientation: Frame | None = None) -> MultiVector:
    return a.hodge(orientation)


def random_frames(dim: int, count: int, samples: int, rng) -> np.ndarray:
    """Stack of ``samples`` random orthonormal frames, shape (samples, dim, count)
    with frame vectors as columns."""
    g = rng.standard_normal((samples, dim, count))
    q, r = np.linalg.qr(g)
    return q * np.sign(np.sign(np.einsum("sii->si", r)) + 0.5)[:, None, :]
