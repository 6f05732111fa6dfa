"""Graph submanifolds of Riemannian products under the volume calibration:
singular-value frames, the closed form of the angle, the quadratic-form
expansion in second-fundamental-form components, and the curvature
contraction identity for product ambients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .ambient import ProductRiemannian, _curvature_tensor
from .calibrations import volume_calibration
from .immersion import Immersion
from .subgeom import (ConstantAmbientForm, ProductVolumeForm, phi_matrix,
                      q_values_from_components)


def graph_frames_flat(lambdas, n: int):
    """Tangent/normal frames of the model graph point with the given singular
    values, in R^{m+n}: X_i = (e_i + l_i e_{i+m}) / sqrt(1 + l_i^2)."""
    lambdas = np.asarray(lambdas, dtype=float)
    m = lambdas.shape[0]
    if np.count_nonzero(lambdas) > n:
        raise ValueError("more nonzero singular values than the codimension")
    N = m + n
    tangent = np.zeros((m, N))
    for i in range(m):
        tangent[i, i] = 1.0
        if i < n:
            tangent[i, m + i] = lambdas[i]
        tangent[i] /= np.sqrt(1.0 + lambdas[i] ** 2)
    normal = np.zeros((n, N))
    for a in range(n):
        lam = lambdas[a] if a < m else 0.0
        if a < m:
            normal[a, a] = lam
        normal[a, m + a] = -1.0
        normal[a] /= np.sqrt(1.0 + lam**2)
    return tangent, normal


def graph_cos_theta(lambdas) -> float:
    lambdas = np.asarray(lambdas, dtype=float)
    return float(np.prod(1.0 + lambdas**2) ** -0.5)


def q_graph_expansion(lambdas, h) -> float:
    """Quadratic form of the volume calibration on a second-form tensor,
    written in the singular-value frames:
    ||B||^2 + sum_ik l_i^2 (h^{m+i}_{ik})^2 + 2 sum_{k, i<j} l_i l_j h^{m+i}_{jk} h^{m+j}_{ik}."""
    lambdas = np.asarray(lambdas, dtype=float)
    h = np.asarray(h, dtype=float)
    n, m, _ = h.shape
    total = float(np.sum(h * h))
    for i in range(min(m, n)):
        total += lambdas[i] ** 2 * float(np.sum(h[i, i, :] ** 2))
    for i in range(m):
        for j in range(i + 1, m):
            if j >= n or i >= n:
                continue
            total += 2.0 * lambdas[i] * lambdas[j] * float(np.sum(h[i, j, :] * h[j, i, :]))
    return total


def q_graph_raw(lambdas, h, n: int) -> float:
    """Same quantity from the defining formula, via the model frames."""
    lambdas = np.asarray(lambdas, dtype=float)
    m = lambdas.shape[0]
    tangent, normal = graph_frames_flat(lambdas, n)
    form = ConstantAmbientForm(volume_calibration(m, n).form)
    cos = graph_cos_theta(lambdas)
    from .subgeom import psi_tensor

    phi = phi_matrix(form, None, tangent, normal)
    psi = psi_tensor(form, None, tangent, normal)
    return q_values_from_components(h, phi, psi, cos).q


def delta_margin(lambdas, delta: float) -> float:
    """Positive iff |l_i l_j| <= 1 - delta for all i != j."""
    lambdas = np.asarray(lambdas, dtype=float)
    m = lambdas.shape[0]
    worst = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            worst = max(worst, abs(lambdas[i] * lambdas[j]))
    return (1.0 - delta) - worst


def sin_sq_bounds(lambdas):
    """(lower, sin^2, upper-candidate): the product-expansion lower bound
    cos^2 sum(l^2) always holds; the printed upper bound (m-1)cos^2 sum(l^2)
    holds in the single-nonzero-value (codimension-one) regime."""
    lambdas = np.asarray(lambdas, dtype=float)
    m = lambdas.shape[0]
    cos2 = float(np.prod(1.0 + lambdas**2) ** -1)
    sin2 = 1.0 - cos2
    s = float(np.sum(lambdas**2))
    return cos2 * s, sin2, max(m - 1, 1) * cos2 * s


@dataclass
class GraphPointData:
    lambdas: np.ndarray
    cos_theta: float
    tangent: np.ndarray          # ambient chart components, rows
    normal: np.ndarray
    base_frame: np.ndarray       # diagonalizing basis a_i of the base factor
    fiber_frame: np.ndarray      # orthonormal a_{i+m} in the fiber factor
    phi_diag_residual: float     # raw morphism vs cos(theta) l_i pattern


def graph_point(imm: Immersion, u) -> GraphPointData:
    """Singular-value frames of a graph immersion into a product: the frames
    diagonalize the pulled-back fiber metric against the base metric."""
    space = imm.ambient
    if not isinstance(space, ProductRiemannian) or len(space.factors) != 2:
        raise ValueError("graph analysis needs a two-factor product ambient")
    m = space.factors[0].dim
    n = space.factors[1].dim
    if imm.m != m:
        raise ValueError("graph parameter dimension must match the base factor")
    F, dF, _ = imm.jet(u)
    xb, xf = space.split(F)
    g1, _, _ = space.factors[0].metric2(xb)
    hN, _, _ = space.factors[1].metric2(xf)
    # the chart of a graph immersion is the base chart
    df = dF[m:, :]
    fsh = df.T @ hN @ df
    vals, vecs = eigh(fsh, g1)           # columns: g1-orthonormal a_i
    order = np.argsort(vals)[::-1]
    vals = np.clip(vals[order], 0.0, None)
    A = vecs[:, order]
    if np.linalg.det(A) < 0:
        A[:, -1] = -A[:, -1]
    lambdas = np.sqrt(vals)

    N = space.dim
    base = np.zeros((m, N))
    base[:, :m] = A.T
    # fiber frame: normalized images of the diagonalizing basis, completed
    # to an orthonormal basis of the fiber tangent space
    used = []
    for i in range(min(m, n)):
        if lambdas[i] > 1e-12:
            used.append(df @ A[:, i] / lambdas[i])
    for cand in np.eye(n):
        if len(used) == n:
            break
        v = cand.copy()
        for w in used:
            v = v - (w @ hN @ v) * w
        nv = float(v @ hN @ v)
        if nv > 1e-16:
            used.append(v / np.sqrt(nv))
    fiber = np.zeros((n, N))
    for a in range(n):
        fiber[a, m:] = used[a]

    tangent = np.zeros((m, N))
    normal = np.zeros((n, N))

    for i in range(m):
        tangent[i] = base[i]
        if i < n:
            tangent[i, m:] += lambdas[i] * fiber[i, m:]
        tangent[i] /= np.sqrt(1.0 + lambdas[i] ** 2)
    for a in range(n):
        lam = lambdas[a] if a < m else 0.0
        normal[a, :m] = lam * base[a, :m] if a < m else 0.0
        normal[a, m:] = -fiber[a, m:]
        normal[a] /= np.sqrt(1.0 + lam**2)

    form = ProductVolumeForm(space)
    cos = float(form.value(F, tangent))
    phi = phi_matrix(form, F, tangent, normal)
    expected = np.zeros_like(phi)
    for i in range(min(m, n)):
        expected[i, i] = cos * lambdas[i]
    resid = float(np.max(np.abs(phi - expected)))
    return GraphPointData(lambdas, cos, tangent, normal, base, fiber, resid)


@dataclass
class GraphAnalysis:
    lambdas: np.ndarray
    cos_theta: float
    phi_diag_residual: float
    delta_margin: float            # worst Q/||B||^2 over probe tensors
    contraction: float             # curvature contraction, direct evaluation
    contraction_residual: float    # against the factored form


def graph_analysis(imm: Immersion, u, probes: int = 20, seed: int = 0) -> GraphAnalysis:
    """One-call summary at a graph point: singular values, angle, the
    diagonal-morphism residual, a delta-positivity margin over random probe
    tensors, and the curvature contraction both ways."""
    data = graph_point(imm, u)
    n = imm.ambient.dim - imm.m
    rng = np.random.default_rng(seed)
    margin = np.inf
    for _ in range(probes):
        h = rng.standard_normal((n, imm.m, imm.m))
        h = 0.5 * (h + h.transpose(0, 2, 1))
        margin = min(margin, q_graph_expansion(data.lambdas, h) / float(np.sum(h * h)))
    direct, factored = contraction_via_factors(imm, u, data)
    return GraphAnalysis(data.lambdas, data.cos_theta, data.phi_diag_residual,
                         float(margin), direct, abs(direct - factored))


def contraction_via_factors(imm: Immersion, u, data: GraphPointData | None = None):
    """The curvature contraction of the angle identity, once directly from
    the product curvature tensor and once from the factor sectional values
    weighted by l_j^2 / ((1+l_i^2)(1+l_j^2)); returns (direct, factor_form)."""
    space = imm.ambient
    if data is None:
        data = graph_point(imm, u)
    F, _, _ = imm.jet(u)
    R = space.curvature_tensor(F)
    m = space.factors[0].dim
    lam = data.lambdas
    cos = data.cos_theta

    phi_amb = np.zeros_like(data.tangent)
    for i in range(min(m, space.factors[1].dim)):
        phi_amb[i] = cos * lam[i] * data.normal[i]
    direct = float(
        np.einsum("mnsr,im,jn,is,jr->", R, data.tangent, data.tangent,
                  data.tangent, phi_amb)
    )

    xb, xf = space.split(F)
    Rb = _curvature_tensor(*space.factors[0].metric2(xb))
    Rf = _curvature_tensor(*space.factors[1].metric2(xf))
    ai = data.base_frame[:, :m]
    an = data.fiber_frame[:, m:]
    total = 0.0
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            w = lam[j] ** 2 / ((1.0 + lam[i] ** 2) * (1.0 + lam[j] ** 2))
            if w == 0.0:
                continue
            rb = float(np.einsum("mnsr,m,n,s,r->", Rb, ai[i], ai[j], ai[i], ai[j]))
            rf = 0.0
            if lam[i] > 0:
                rf = float(np.einsum("mnsr,m,n,s,r->", Rf, an[i], an[j], an[i], an[j]))
            total += w * (rb - lam[i] ** 2 * rf)
    return direct, cos * total
