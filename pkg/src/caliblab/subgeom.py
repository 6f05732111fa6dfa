"""Per-point submanifold geometry: frames, second fundamental form, the
tangent-to-normal morphisms induced by a calibration, the quadratic forms
built from them, and finite-difference checks of the angle identities.

Scalar outputs (angle, morphism norms, quadratic-form values, curvature
contractions) are frame-invariant; matrix representations refer to the
frames stored on the FramedPoint that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .ambient import AmbientSpace, Euclidean, ProductRiemannian, SpaceFormModel, _christoffels
from .calibrations import Calibration
from .immersion import Immersion
from .multivector import MultiVector
from .numdiff import gradient as fd_gradient


class RankError(ValueError):
    pass


class AngleSignError(ValueError):
    """Raised where a computation requires cos(theta) > 0."""


# -- calibration forms realized on an ambient space ---------------------


class ConstantAmbientForm:
    """A constant-coefficient form used in a flat chart."""

    def __init__(self, form: MultiVector):
        self.form = form
        self.grade = form.grade
        self.dim = form.dim

    def value(self, p, vectors) -> float:
        return self.form.evaluate(np.asarray(vectors, dtype=float))

    def norm_sq(self, p) -> float:
        return float(self.form.coeffs @ self.form.coeffs)


class ProductVolumeForm:
    """Volume form of the first factor of a Riemannian product, evaluated on
    ambient vectors: det of their pairings with an orthonormal factor frame."""

    def __init__(self, space: ProductRiemannian, factor: int = 0):
        self.space = space
        self.factor = factor
        self.grade = space.factors[factor].dim
        self.dim = space.dim
        self.offset = int(space.offsets[factor])

    def _factor_frame(self, p):
        x = self.space.split(p)[self.factor]
        gf, _, _ = self.space.factors[self.factor].metric2(x)
        L = np.linalg.cholesky(gf)
        E = np.linalg.inv(L).T  # columns: orthonormal direct frame
        return gf, E

    def value(self, p, vectors) -> float:
        vectors = np.asarray(vectors, dtype=float)
        gf, E = self._factor_frame(p)
        sl = slice(self.offset, self.offset + self.grade)
        M = vectors[:, sl] @ gf @ E
        return float(np.linalg.det(M))

    def norm_sq(self, p) -> float:
        return 1.0


def as_ambient_form(omega, space: AmbientSpace):
    """Realize a calibration on the given space."""
    if hasattr(omega, "value") and hasattr(omega, "norm_sq"):
        return omega
    form = omega.form if isinstance(omega, Calibration) else omega
    if isinstance(space, (Euclidean, SpaceFormModel)):
        if form.dim != space.dim:
            raise ValueError("form dimension does not match the ambient space")
        return ConstantAmbientForm(form)
    raise ValueError(
        "constant forms need a flat chart; use ProductVolumeForm on products"
    )


# -- framed points -------------------------------------------------------


@dataclass
class FramedPoint:
    u: np.ndarray            # parameter point
    point: np.ndarray        # ambient chart point
    tangent: np.ndarray      # (m, N) rows: direct orthonormal tangent frame
    normal: np.ndarray       # (n, N) rows: orthonormal normal frame
    coframe: np.ndarray      # (m, m): X_a = sum_i coframe[i, a] dF_i
    metric: np.ndarray       # induced metric in parameter coordinates
    h: np.ndarray            # (n, m, m): second fundamental form in frames
    H: np.ndarray            # mean curvature vector, ambient components
    H_frame: np.ndarray      # its normal-frame components
    cos_theta: float | None = None

    @property
    def m(self) -> int:
        return self.tangent.shape[0]

    @property
    def n(self) -> int:
        return self.normal.shape[0]

    def norm_B_sq(self) -> float:
        return float(np.sum(self.h * self.h))

    def norm_H(self) -> float:
        return float(np.linalg.norm(self.H_frame))

    @property
    def sin_theta(self) -> float:
        if self.cos_theta is None:
            raise ValueError("no calibration angle attached to this point")
        return float(np.sqrt(max(0.0, 1.0 - self.cos_theta**2)))


def frame_at(imm: Immersion, u, omega=None, rank_tol: float = 1e-8) -> FramedPoint:
    """Orthonormal frames, induced metric, second fundamental form and mean
    curvature at a parameter point (plus the calibration angle if a form is
    supplied)."""
    u = np.asarray(u, dtype=float)
    F, dF, d2F = imm.jet(u)
    space = imm.ambient
    space.check_chart(F)
    gbar = space.metric(F)
    g = dF.T @ gbar @ dF
    eigs = np.linalg.eigvalsh(g)
    if eigs[0] <= rank_tol**2:
        raise RankError(f"differential is rank deficient at {u} (sigma_min^2 = {eigs[0]:.3e})")
    L = np.linalg.cholesky(g)
    coframe = np.linalg.inv(L).T
    tangent = (dF @ coframe).T

    n = space.dim - imm.m
    normal_rows = []
    basis = np.eye(space.dim)
    frame_rows = [tangent[a] for a in range(imm.m)]
    for a in range(space.dim):
        v = basis[a].copy()
        for w in frame_rows:
            v = v - (w @ gbar @ v) * w
        nv = float(v @ gbar @ v)
        if nv > 1e-16:
            v = v / np.sqrt(nv)
            frame_rows.append(v)
            normal_rows.append(v)
        if len(normal_rows) == n:
            break
    if len(normal_rows) != n:
        raise RankError("failed to complete a normal frame")
    normal = np.array(normal_rows)

    gam = space.christoffels(F)
    D = d2F + np.einsum("lmn,mi,nj->lij", gam, dF, dF)
    h_raw = np.einsum("an,nl,lij->aij", normal, gbar, D)
    h = np.einsum("ia,jb,cij->cab", coframe, coframe, h_raw)
    h = 0.5 * (h + h.transpose(0, 2, 1))
    H_frame = np.einsum("aii->a", h) / imm.m
    H = H_frame @ normal

    cos_theta = None
    if omega is not None:
        form = as_ambient_form(omega, space)
        cos_theta = float(form.value(F, tangent))
    return FramedPoint(u, F, tangent, normal, coframe, g, h, H, H_frame, cos_theta)


def omega_angle(imm: Immersion, omega, u) -> float:
    """Calibration value on the direct orthonormal tangent frame."""
    return frame_at(imm, u, omega=omega).cos_theta


# -- the tangent-to-normal morphisms -------------------------------------


def phi_matrix(form, p, tangent, normal) -> np.ndarray:
    """(n, m) matrix of the morphism X -> normal part dual to the form
    contracted with the star of X: entry [a, k] pairs normal vector a with
    tangent vector k."""
    m = tangent.shape[0]
    n = normal.shape[0]
    out = np.empty((n, m))
    idx = np.arange(m)
    for k in range(m):
        rest = tangent[idx != k]
        for a in range(n):
            stacked = np.vstack([normal[a][None, :], rest])
            out[a, k] = ((-1) ** k) * form.value(p, stacked)
    return out


def psi_tensor(form, p, tangent, normal) -> np.ndarray:
    """Pairing matrix on 2-vectors: rows over tangent index pairs i<j, columns
    over normal pairs a<b."""
    m = tangent.shape[0]
    n = normal.shape[0]
    tpairs = list(combinations(range(m), 2))
    npairs = list(combinations(range(n), 2))
    out = np.empty((len(tpairs), len(npairs)))
    idx = np.arange(m)
    for r, (i, j) in enumerate(tpairs):
        if m == 2:
            rest = tangent[0:0]
            sign = 1.0
        else:
            rest = tangent[(idx != i) & (idx != j)]
            sign = (-1.0) ** (i + j + 1)
        for cidx, (a, b) in enumerate(npairs):
            stacked = np.vstack([normal[a][None], normal[b][None], rest])
            out[r, cidx] = sign * form.value(p, stacked)
    return out


def wedge2_of_B(h: np.ndarray) -> np.ndarray:
    """Second compound of the second fundamental form: rows over tangent pairs
    i<j, columns over normal pairs a<b."""
    n, m, _ = h.shape
    tpairs = list(combinations(range(m), 2))
    npairs = list(combinations(range(n), 2))
    out = np.zeros((len(tpairs), len(npairs)))
    for r, (i, j) in enumerate(tpairs):
        for cidx, (a, b) in enumerate(npairs):
            out[r, cidx] = float(np.sum(h[a, :, i] * h[b, :, j] - h[b, :, i] * h[a, :, j]))
    return out


def b_phi_vector(h: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """One-form X -> sum_i <B(X_i, X), Phi(X_i)> in tangent-frame components."""
    return np.einsum("aik,ai->k", h, phi)


@dataclass
class MorphismData:
    phi: np.ndarray
    psi: np.ndarray
    b_phi: np.ndarray
    nabla_perp_H: np.ndarray | None

    def phi_operator_norm(self) -> float:
        return float(np.linalg.svd(self.phi, compute_uv=False)[0])

    def phi_norm_sq(self) -> float:
        return float(np.sum(self.phi * self.phi))


def nabla_perp_H(imm: Immersion, u, fp: FramedPoint | None = None,
                 step: float = 1e-4) -> np.ndarray:
    """(m, n) array of normal-connection derivatives of the mean curvature
    along the tangent frame, by Richardson-extrapolated central differences
    of the ambient mean-curvature field."""
    if fp is None:
        fp = frame_at(imm, u)
    space = imm.ambient

    def H_of(v):
        return frame_at(imm, v).H

    dH = fd_gradient(H_of, fp.u, h=step, richardson=True)  # (N, m)
    gam = space.christoffels(fp.point)
    _, dF, _ = imm.jet(fp.u)
    cov = dH + np.einsum("lmn,mi,n->li", gam, dF, fp.H)
    cov_frame = cov @ fp.coframe  # ambient covariant derivative along X_a
    gbar = space.metric(fp.point)
    return np.einsum("la,bl->ab", gbar @ cov_frame, fp.normal)


def phi_psi(imm: Immersion, omega, u, step: float = 1e-4,
            with_nabla_H: bool = True) -> tuple[FramedPoint, MorphismData]:
    fp = frame_at(imm, u, omega=omega)
    form = as_ambient_form(omega, imm.ambient)
    phi = phi_matrix(form, fp.point, fp.tangent, fp.normal)
    psi = psi_tensor(form, fp.point, fp.tangent, fp.normal)
    b_phi = b_phi_vector(fp.h, phi)
    nH = nabla_perp_H(imm, u, fp, step) if with_nabla_H else None
    return fp, MorphismData(phi, psi, b_phi, nH)


# -- quadratic forms ------------------------------------------------------


@dataclass
class QForms:
    q_tilde: float
    q: float
    q_hat: float
    margin: float | None


def q_values_from_components(h, phi, psi, cos_theta) -> QForms:
    if cos_theta <= 0:
        raise AngleSignError(f"quadratic forms need cos(theta) > 0, got {cos_theta}")
    B2 = float(np.sum(h * h))
    pairing = float(np.sum(psi * wedge2_of_B(h)))
    b_phi = b_phi_vector(h, phi)
    bphi2 = float(b_phi @ b_phi)
    q_tilde = B2 - 2.0 / cos_theta * pairing
    q = q_tilde + bphi2 / cos_theta**2
    q_hat = q + bphi2 / cos_theta**2
    margin = q / B2 if B2 > 0 else None
    return QForms(q_tilde, q, q_hat, margin)


def q_forms(imm: Immersion, omega, u) -> QForms:
    fp, morph = phi_psi(imm, omega, u, with_nabla_H=False)
    return q_values_from_components(fp.h, morph.phi, morph.psi, fp.cos_theta)


# -- identity checks ------------------------------------------------------


def curvature_phi_contraction(space: AmbientSpace, fp: FramedPoint,
                              phi: np.ndarray) -> float:
    """sum_ij R(X_i, X_j, X_i, Phi(X_j)) with the ambient curvature oracle."""
    R = space.curvature_tensor(fp.point)
    phi_amb = phi.T @ fp.normal  # (m, N): Phi(X_j) ambient components
    return float(np.einsum("mnsr,im,jn,is,jr->", R, fp.tangent, fp.tangent,
                           fp.tangent, phi_amb))


def angle_gradient_check(imm: Immersion, omega, u, step: float = 1e-4):
    """Frame components of grad cos(theta) by finite differences against the
    one-form built from B and Phi; returns (fd, formula, residual)."""
    fp, morph = phi_psi(imm, omega, u, with_nabla_H=False)
    form = as_ambient_form(omega, imm.ambient)

    def cos_of(v):
        return frame_at(imm, v, omega=form).cos_theta

    dcos = fd_gradient(cos_of, fp.u, h=step, richardson=True)
    fd_frame = dcos @ fp.coframe
    res = float(np.max(np.abs(fd_frame - morph.b_phi)))
    return fd_frame, morph.b_phi, res


def laplacian_costheta_check(imm: Immersion, omega, u, step: float = 1e-3):
    """Divergence-form finite-difference Laplacian of cos(theta) against
    the curvature identity; returns (lhs, rhs, residual_rel)."""
    form = as_ambient_form(omega, imm.ambient)
    fp, morph = phi_psi(imm, omega, u)
    space = imm.ambient

    def cos_of(v):
        return frame_at(imm, v, omega=form).cos_theta

    def metric_of(v):
        F, dF, _ = imm.jet(v)
        return dF.T @ space.metric(F) @ dF

    u = np.asarray(u, dtype=float)
    m = imm.m

    def flux(v):
        g = metric_of(v)
        ginv = np.linalg.inv(g)
        sq = np.sqrt(np.linalg.det(g))
        dcos = fd_gradient(cos_of, v, h=step)
        return sq * (ginv @ dcos)

    div = 0.0
    for i in range(m):
        e = np.zeros(m)
        e[i] = step
        div += (flux(u + e)[i] - flux(u - e)[i]) / (2.0 * step)
    g0 = metric_of(u)
    lhs = div / np.sqrt(np.linalg.det(g0))

    B2 = fp.norm_B_sq()
    pairing = float(np.sum(morph.psi * wedge2_of_B(fp.h)))
    contraction = curvature_phi_contraction(space, fp, morph.phi)
    nH_dot_phi = float(np.sum(morph.nabla_perp_H * morph.phi.T))
    rhs = -(fp.cos_theta * B2 - 2.0 * pairing) + m * nH_dot_phi - contraction
    scale = max(abs(lhs), abs(rhs), 1e-12)
    return lhs, rhs, abs(lhs - rhs) / scale


def divergence_identity_check(imm: Immersion, omega, u, step: float = 1e-4):
    """Checks, at one point: the divergence of the calibration-induced field
    paired with H, the codifferential identity for the morphism, and the
    norm bound relating the field to sin(theta) ||H||.

    Returns a dict with lhs/rhs pairs and the bound slack.
    """
    form = as_ambient_form(omega, imm.ambient)
    space = imm.ambient
    fp, morph = phi_psi(imm, omega, u, step=step)
    m = imm.m

    def framed(v):
        return frame_at(imm, v, omega=form)

    def metric_of(v):
        F, dF, _ = imm.jet(v)
        return dF.T @ space.metric(F) @ dF

    # Z is defined by g(Z, X) = <Phi(X), H>; in the orthonormal tangent frame
    # its components are phi^T H, converted here to coordinate components
    def z_coord(v):
        p = framed(v)
        phi_v = phi_matrix(form, p.point, p.tangent, p.normal)
        z_frame = phi_v.T @ p.H_frame  # g(Z, X_a)
        return p.coframe @ z_frame     # coordinate components of Z

    u = np.asarray(u, dtype=float)

    def flux(v):
        g = metric_of(v)
        return np.sqrt(np.linalg.det(g)) * z_coord(v)

    div = 0.0
    for i in range(m):
        e = np.zeros(m)
        e[i] = step
        div += (flux(u + e)[i] - flux(u - e)[i]) / (2.0 * step)
    divZ = div / np.sqrt(np.linalg.det(metric_of(u)))

    nH_dot_phi = float(np.sum(morph.nabla_perp_H * morph.phi.T))
    H2 = float(fp.H_frame @ fp.H_frame)
    div_rhs = -m * fp.cos_theta * H2 + nH_dot_phi

    # codifferential of the morphism against m cos(theta) H
    def phi_on_coords(v):
        p = framed(v)
        phi_v = phi_matrix(form, p.point, p.tangent, p.normal)
        # Phi(dF_i) ambient components, i-th column
        frame_to_coord = np.linalg.inv(p.coframe)  # dF_i = sum_a inv[a, i] X_a
        return (phi_v @ frame_to_coord).T @ p.normal  # (m, N)

    dphi = fd_gradient(phi_on_coords, u, h=step, richardson=True)  # (m, N, m)
    gam_amb = space.christoffels(fp.point)
    _, dF, _ = imm.jet(u)
    g = metric_of(u)
    ginv = np.linalg.inv(g)
    dg = fd_gradient(metric_of, u, h=step, richardson=True)
    gam_ind = _christoffels(g, dg)[0]
    phi_coord = phi_on_coords(u)
    delta_phi = np.zeros(space.dim)
    for i in range(m):
        for j in range(m):
            cov = dphi[j, :, i] + np.einsum("lmn,m,n->l", gam_amb, dF[:, i], phi_coord[j])
            cov = cov - np.einsum("k,kl->l", gam_ind[:, i, j], phi_coord)
            delta_phi -= ginv[i, j] * cov
    gbar = space.metric(fp.point)
    delta_phi_normal = fp.normal @ gbar @ delta_phi
    delta_rhs = m * fp.cos_theta * fp.H_frame

    z_frame = morph.phi.T @ fp.H_frame
    z_norm = float(np.linalg.norm(z_frame))
    bound_slack = fp.sin_theta * np.sqrt(H2) - z_norm

    return {
        "div_lhs": divZ,
        "div_rhs": div_rhs,
        "div_residual": abs(divZ - div_rhs),
        "codiff_lhs": delta_phi_normal,
        "codiff_rhs": delta_rhs,
        "codiff_residual": float(np.max(np.abs(delta_phi_normal - delta_rhs))),
        "z_norm": z_norm,
        "z_bound_slack": bound_slack,
    }
