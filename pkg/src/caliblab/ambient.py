"""Ambient-space oracles: metric, Christoffel symbols, curvature tensor.

Sign convention: the stored 4-tensor is R(X,Y,Z,W) with R(X,Y,X,Y) equal to
the sectional curvature of the plane (X, Y) for orthonormal arguments.  For
a metric given in coordinates this is the classical tensor with the last
two slots swapped; the convention is pinned down by the Gauss-equation
closure tests on explicit surfaces.

Products are assembled blockwise from factor oracles.  Factors provide the
metric with exact first and second derivatives (closed form for conformal
space-form charts, forward jets for expression-defined metrics).
"""

from __future__ import annotations

import numpy as np

from .exprmap import ExprMap


def hyperbolic_distance(x) -> float:
    """Distance to the origin in the Poincare ball, ln((1+|x|)/(1-|x|))."""
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    if r >= 1.0:
        raise ValueError(f"point with |x| = {r} is outside the unit ball chart")
    return float(np.log((1.0 + r) / (1.0 - r)))


class ChartError(ValueError):
    pass


# -- factor oracles ----------------------------------------------------


class EuclideanFactor:
    def __init__(self, dim: int):
        self.dim = dim

    def inside(self, x) -> bool:
        return True

    def metric2(self, x):
        d = self.dim
        return np.eye(d), np.zeros((d, d, d)), np.zeros((d, d, d, d))


class ConformalFactor:
    """Space form of curvature kappa in the conformal ball chart:
    g = lambda^2 delta with lambda = 2 / (1 + kappa |x|^2)."""

    def __init__(self, dim: int, curvature: float):
        self.dim = dim
        self.curvature = float(curvature)

    def inside(self, x) -> bool:
        if self.curvature >= 0:
            return True
        return float(np.dot(x, x)) < -1.0 / self.curvature

    def metric2(self, x):
        x = np.asarray(x, dtype=float)
        d, k = self.dim, self.curvature
        if not self.inside(x):
            raise ChartError(f"point outside conformal chart (|x|^2 = {x @ x})")
        w = 1.0 + k * float(x @ x)
        u = 4.0 / w**2
        du = -16.0 * k * x / w**3
        d2u = (-16.0 * k / w**3) * np.eye(d) + (96.0 * k**2 / w**4) * np.outer(x, x)
        eye = np.eye(d)
        g = u * eye
        dg = eye[:, :, None] * du[None, None, :]
        d2g = eye[:, :, None, None] * d2u[None, None, :, :]
        return g, dg, d2g


class ExprMetricFactor:
    """Metric entries given as expression strings in the chart variables."""

    def __init__(self, entries, dim: int):
        self.dim = dim
        self.maps = [[ExprMap(entries[i][j], dim) for j in range(dim)] for i in range(dim)]

    def inside(self, x) -> bool:
        return True

    def metric2(self, x):
        d = self.dim
        g = np.empty((d, d))
        dg = np.empty((d, d, d))
        d2g = np.empty((d, d, d, d))
        for i in range(d):
            for j in range(d):
                v, grad, hess = self.maps[i][j].jet(x)
                g[i, j] = v[0]
                dg[i, j] = grad[0]
                d2g[i, j] = hess[0]
        g = 0.5 * (g + g.T)
        dg = 0.5 * (dg + dg.transpose(1, 0, 2))
        d2g = 0.5 * (d2g + d2g.transpose(1, 0, 2, 3))
        return g, dg, d2g


def _christoffels(g, dg):
    """Gamma^k_ij from the metric and its first derivatives
    (dg[a, b, c] = d_c g_ab)."""
    ginv = np.linalg.inv(g)
    # A[l, i, j] = d_i g_lj + d_j g_li - d_l g_ij
    A = dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1)
    return 0.5 * np.einsum("kl,lij->kij", ginv, A), ginv, A


def _curvature_tensor(g, dg, d2g):
    """Sectional-positive curvature 4-tensor R[m, n, s, r] of the metric
    (d2g[a, b, c, d] = d_c d_d g_ab)."""
    gamma, ginv, A = _christoffels(g, dg)
    # dA[l, i, j, m] = d_m A[l, i, j]
    dA = d2g.transpose(0, 2, 1, 3) + d2g - d2g.transpose(2, 0, 1, 3)
    dginv = -np.einsum("ka,abm,bl->klm", ginv, dg, ginv)
    dgamma = 0.5 * (
        np.einsum("klm,lij->kijm", dginv, A) + np.einsum("kl,lijm->kijm", ginv, dA)
    )
    # R^r_{s m n} = d_m Gamma^r_{n s} - d_n Gamma^r_{m s} + G^r_{m l}G^l_{n s} - G^r_{n l}G^l_{m s}
    Rup = (
        np.einsum("rnsm->rsmn", dgamma)
        - np.einsum("rmsn->rsmn", dgamma)
        + np.einsum("rml,lns->rsmn", gamma, gamma)
        - np.einsum("rnl,lms->rsmn", gamma, gamma)
    )
    Rstd = np.einsum("pr,rsmn->mnsp", g, Rup)  # R_std(X,Y,Z,W) indices (m,n,s,p)
    return Rstd.transpose(0, 1, 3, 2)  # swap the last two slots


class AmbientSpace:
    """Base: flat metric unless overridden."""

    dim: int

    def inside_chart(self, p) -> bool:
        return True

    def check_chart(self, p) -> None:
        if not self.inside_chart(p):
            raise ChartError(f"point {np.asarray(p)} outside the chart")

    def metric(self, p) -> np.ndarray:
        return np.eye(self.dim)

    def christoffels(self, p) -> np.ndarray:
        return np.zeros((self.dim, self.dim, self.dim))

    def curvature_tensor(self, p) -> np.ndarray:
        return np.zeros((self.dim,) * 4)

    def curvature(self, p, X, Y, Z, W) -> float:
        R = self.curvature_tensor(p)
        return float(np.einsum("mnsr,m,n,s,r->", R, X, Y, Z, W))


class Euclidean(AmbientSpace):
    def __init__(self, dim: int):
        self.dim = dim

    def __repr__(self):
        return f"Euclidean({self.dim})"


class ProductRiemannian(AmbientSpace):
    """Riemannian product of factor oracles, blockwise in the chart."""

    def __init__(self, factors):
        self.factors = list(factors)
        self.dims = [f.dim for f in self.factors]
        self.dim = sum(self.dims)
        self.offsets = np.concatenate([[0], np.cumsum(self.dims)])

    def split(self, p):
        p = np.asarray(p, dtype=float)
        return [p[self.offsets[i]:self.offsets[i + 1]] for i in range(len(self.factors))]

    def inside_chart(self, p) -> bool:
        return all(f.inside(x) for f, x in zip(self.factors, self.split(p)))

    def metric(self, p) -> np.ndarray:
        self.check_chart(p)
        g = np.zeros((self.dim, self.dim))
        for f, x, o in zip(self.factors, self.split(p), self.offsets):
            gf, _, _ = f.metric2(x)
            g[o:o + f.dim, o:o + f.dim] = gf
        return g

    def christoffels(self, p) -> np.ndarray:
        self.check_chart(p)
        gamma = np.zeros((self.dim,) * 3)
        for f, x, o in zip(self.factors, self.split(p), self.offsets):
            gf, dgf, _ = f.metric2(x)
            gam, _, _ = _christoffels(gf, dgf)
            gamma[o:o + f.dim, o:o + f.dim, o:o + f.dim] = gam
        return gamma

    def curvature_tensor(self, p) -> np.ndarray:
        self.check_chart(p)
        R = np.zeros((self.dim,) * 4)
        for f, x, o in zip(self.factors, self.split(p), self.offsets):
            s = slice(o, o + f.dim)
            R[s, s, s, s] = _curvature_tensor(*f.metric2(x))
        return R


def product_hyperbolic_line(m: int) -> ProductRiemannian:
    """H^m x R in Poincare-ball coordinates, metric 4 delta/(1-|x|^2)^2 on the ball."""
    return ProductRiemannian([ConformalFactor(m, -1.0), EuclideanFactor(1)])


class SpaceFormModel(AmbientSpace):
    """Pointwise algebraic curvature model on a flat chart (no holonomy):
    complex or quaternionic space form of reduced curvature nu."""

    def __init__(self, structures, nu: float, dim: int):
        self.structures = [np.asarray(S, dtype=float) for S in structures]
        self.nu = float(nu)
        self.dim = dim
        self._tensor = None

    def curvature_tensor(self, p=None) -> np.ndarray:
        if self._tensor is None:
            d = self.dim
            eye = np.eye(d)
            wedge = np.einsum("xz,yw->xyzw", eye, eye) - np.einsum(
                "xw,yz->xyzw", eye, eye
            )
            R = wedge.copy()
            for S in self.structures:
                # <SX ^ SY, Z ^ W> term
                R += np.einsum("zx,wy->xyzw", S, S) - np.einsum("wx,zy->xyzw", S, S)
                # 2 <SX, Y><SZ, W> term
                R += 2.0 * np.einsum("yx,wz->xyzw", S, S)
            self._tensor = (self.nu / 4.0) * R
        return self._tensor

    def curvature(self, p, X, Y, Z, W) -> float:
        R = self.curvature_tensor(p)
        return float(np.einsum("mnsr,m,n,s,r->", R, X, Y, Z, W))


def complex_space_form(k: int, nu: float) -> SpaceFormModel:
    from .calibrations import complex_structure

    return SpaceFormModel([complex_structure(k)], nu, 2 * k)


def quaternionic_space_form(n: int, nu: float) -> SpaceFormModel:
    from .calibrations import quaternionic_structures

    return SpaceFormModel(list(quaternionic_structures(n)), nu, 4 * n)


def curvature(space: AmbientSpace, p, X, Y, Z, W) -> float:
    """R(X, Y, Z, W) of the ambient oracle at p (sectional-positive slots)."""
    return space.curvature(p, X, Y, Z, W)
