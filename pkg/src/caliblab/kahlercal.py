"""Kaehler angles of even-dimensional planes and submanifolds, the
complex/anticomplex split of second-form tensors in the equal-angle case,
and the restrictive positivity window for the induced quadratic form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import polar

from .calibrations import complex_structure, kaehler_calibration
from .immersion import Immersion
from .subgeom import (ConstantAmbientForm, frame_at, phi_matrix, psi_tensor,
                      q_values_from_components)


def pullback_kaehler(frame_rows: np.ndarray, J: np.ndarray | None = None) -> np.ndarray:
    """Matrix w(X_a, X_b) = <J X_a, X_b> of the pulled-back Kaehler form."""
    rows = np.asarray(frame_rows, dtype=float)
    if J is None:
        J = complex_structure(rows.shape[1] // 2)
    return np.einsum("al,lk,bk->ab", rows, J.T, rows)


@dataclass
class KaehlerAngleData:
    angles: np.ndarray          # cosines, descending, one per 2-plane pair
    epsilon: float              # orientation sign of the pulled-back power
    equal: bool
    cos_theta: float            # epsilon * product of the angle cosines
    J_w: np.ndarray | None      # polar complex structure on the tangent side
    J_perp: np.ndarray | None   # and on the normal side (4-plane case)


def kaehler_angles_of_plane(tangent: np.ndarray, normal: np.ndarray | None = None,
                            tol: float = 1e-9) -> KaehlerAngleData:
    """Angles from the singular values of the pulled-back Kaehler form on an
    oriented even-dimensional plane (rows orthonormal)."""
    tangent = np.asarray(tangent, dtype=float)
    m = tangent.shape[0]
    if m % 2:
        raise ValueError("Kaehler angles need an even-dimensional plane")
    W = pullback_kaehler(tangent)
    sv = np.linalg.svd(W, compute_uv=False)
    angles = np.clip(sv[::2], 0.0, 1.0)  # doubled singular values
    pf = _pfaffian(W)
    prod = float(np.prod(angles))
    epsilon = 1.0 if pf >= 0 else -1.0
    cos_theta = epsilon * prod
    equal = bool(angles.max() - angles.min() < tol and epsilon > 0)
    J_w = None
    J_perp = None
    if angles.min() > tol:
        U, _ = polar(W)
        J_w = U
    if normal is not None and normal.shape[0] == tangent.shape[0]:
        Wp = pullback_kaehler(np.asarray(normal, dtype=float))
        if np.linalg.svd(Wp, compute_uv=False).min() > tol:
            J_perp = polar(Wp)[0]
    return KaehlerAngleData(angles, epsilon, equal, cos_theta, J_w, J_perp)


def _pfaffian(W: np.ndarray) -> float:
    m = W.shape[0]
    if m == 2:
        return float(W[0, 1])
    if m == 4:
        return float(W[0, 1] * W[2, 3] - W[0, 2] * W[1, 3] + W[0, 3] * W[1, 2])
    raise ValueError("pfaffian implemented for m in {2, 4}")


def kahler_angles(imm: Immersion, u) -> KaehlerAngleData:
    """Angles of an immersed even-dimensional submanifold of C^k."""
    fp = frame_at(imm, u)
    return kaehler_angles_of_plane(fp.tangent, fp.normal)


@dataclass
class KaehlerPointReport:
    angles: np.ndarray
    epsilon: float
    equal: bool
    cos_theta: float
    norm_c: float | None       # complex part of the immersion's second form
    norm_a: float | None
    certified_delta: float | None
    split_skipped: str | None  # reason when the split is unavailable


def kahler_angle_report(imm: Immersion, u, tol: float = 1e-9) -> KaehlerPointReport:
    """Angles plus, at equal-angle points of a 4-submanifold of C^4, the
    complex/anticomplex norms of its second fundamental form and the
    positivity-window margin; the split is skipped (with a reason) at
    Lagrangian or unequal-angle points."""
    fp = frame_at(imm, u)
    data = kaehler_angles_of_plane(fp.tangent, fp.normal, tol=tol)
    norm_c = norm_a = delta = None
    skipped = None
    if not data.equal:
        skipped = "angles not equal"
    elif data.J_w is None or data.J_perp is None:
        skipped = "polar structure undefined at a Lagrangian point"
    else:
        hc, ha = split_second_form(fp.h, data.J_w, data.J_perp)
        norm_c = float(np.sqrt(np.sum(hc * hc)))
        norm_a = float(np.sqrt(np.sum(ha * ha)))
        delta = positivity_window_delta(data.cos_theta, norm_c**2, norm_a**2)
    return KaehlerPointReport(data.angles, data.epsilon, data.equal,
                              data.cos_theta, norm_c, norm_a, delta, skipped)


def split_second_form(h: np.ndarray, J_w: np.ndarray, J_perp: np.ndarray):
    """Complex/anticomplex parts: B^c = (B - Jp B(Jw ., .))/2 and its
    complement; the split is orthogonal."""
    twisted = np.einsum("ab,bcd,ce->aed", J_perp, h, J_w)
    hc = 0.5 * (h - twisted)
    ha = 0.5 * (h + twisted)
    return hc, ha


@dataclass
class EqualAngleReport:
    cos_theta: float
    cos_angle: float
    q_tilde: float
    norm_c: float
    norm_a: float
    rho: float
    rho_bound: float
    certified_delta: float | None


def positivity_window_delta(cos_theta: float, norm_c2: float, norm_a2: float):
    """Largest delta certified by the anticomplex-dominance condition in the
    window cos(theta) in (11/13, 11/12]; None outside the window."""
    if not (11.0 / 13.0 < cos_theta <= 11.0 / 12.0):
        return None
    top = (13.0 * cos_theta - 11.0) / cos_theta
    if norm_c2 <= 0.0:
        return top
    ratio = norm_a2 / norm_c2
    delta = 13.0 - (13.0 + 11.0 * ratio) / (cos_theta * (1.0 + ratio))
    return float(np.clip(delta, 0.0, top))


def equal_angle_report(tangent, normal, h, tol: float = 1e-9) -> EqualAngleReport:
    """For an equal-angle 4-plane in C^4 with a second-form tensor: the
    quadratic form, the complex/anticomplex norms, the remainder rho of the
    split identity with its stated bound, and the certified delta."""
    data = kaehler_angles_of_plane(tangent, normal, tol=tol)
    if not data.equal:
        raise ValueError("plane does not have equal Kaehler angles")
    if data.J_w is None or data.J_perp is None:
        raise ValueError("angle split undefined at a Lagrangian point")
    cos_t = data.cos_theta
    form = ConstantAmbientForm(kaehler_calibration(2).form)
    phi = phi_matrix(form, None, tangent, normal)
    psi = psi_tensor(form, None, tangent, normal)
    q = q_values_from_components(h, phi, psi, cos_t)
    hc, ha = split_second_form(h, data.J_w, data.J_perp)
    nc2 = float(np.sum(hc * hc))
    na2 = float(np.sum(ha * ha))
    B2 = float(np.sum(h * h))
    rho = q.q_tilde - B2 - (na2 - nc2) / cos_t
    sin2 = 1.0 - float(data.angles[0]) ** 2
    rho_bound = 12.0 * sin2 / cos_t * B2
    delta = positivity_window_delta(cos_t, nc2, na2)
    return EqualAngleReport(cos_t, float(data.angles[0]), q.q_tilde, np.sqrt(nc2),
                            np.sqrt(na2), rho, rho_bound, delta)


def equal_angle_plane(cos_angle: float, rng=None) -> tuple[np.ndarray, np.ndarray]:
    """An oriented 4-plane in R^8 = C^4 with both Kaehler angles equal to the
    given cosine, optionally moved by a random unitary; returns orthonormal
    (tangent, normal) rows."""
    c = float(cos_angle)
    s = np.sqrt(max(0.0, 1.0 - c * c))
    e = np.eye(8)
    tangent = np.stack([
        e[0],
        c * e[1] + s * e[2],
        e[4],
        c * e[5] + s * e[6],
    ])
    if rng is not None:
        U = _random_unitary(4, rng)
        tangent = tangent @ U.T
    normal = _complete_orthonormal(tangent)
    return tangent, normal


def _random_unitary(k: int, rng) -> np.ndarray:
    z = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    out = np.zeros((2 * k, 2 * k))
    out[0::2, 0::2] = q.real
    out[1::2, 1::2] = q.real
    out[0::2, 1::2] = -q.imag
    out[1::2, 0::2] = q.imag
    return out


def _complete_orthonormal(rows: np.ndarray) -> np.ndarray:
    m, N = rows.shape
    frame = [rows[a] for a in range(m)]
    out = []
    for cand in np.eye(N):
        v = cand.copy()
        for w in frame:
            v = v - (w @ v) * w
        nv = float(v @ v)
        if nv > 1e-16:
            v /= np.sqrt(nv)
            frame.append(v)
            out.append(v)
        if len(out) == N - m:
            break
    return np.array(out)
