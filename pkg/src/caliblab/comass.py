"""Comass of a constant m-form: maximize |form| over orthonormal m-frames.

The feasible set is the Stiefel manifold St(N, m).  Ascent uses the
projected Euclidean gradient with QR retraction, run as one batched
iteration over all random restarts at once.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .multivector import Frame, MultiVector, index_subsets, random_frames, subset_array


class FormEvaluator:
    """Precomputed evaluation/gradient tables for one constant m-form."""

    def __init__(self, omega: MultiVector):
        self.omega = omega
        self.dim = omega.dim
        self.grade = omega.grade
        self.subsets = subset_array(omega.dim, omega.grade)
        self.coeffs = np.ascontiguousarray(omega.coeffs)
        self.subsets1 = subset_array(omega.dim, omega.grade - 1)
        self.contract = self._contract_matrix()

    def _contract_matrix(self) -> np.ndarray:
        """(N, S1) matrix M[a, J] = sign(a, J) * c_{sort({a} u J)}."""
        dim, m = self.dim, self.grade
        subs1 = index_subsets(dim, m - 1)
        from .multivector import subset_position

        pos = subset_position(dim, m)
        out = np.zeros((dim, len(subs1)))
        for j, J in enumerate(subs1):
            jset = set(J)
            for a in range(dim):
                if a in jset:
                    continue
                sign = (-1) ** sum(1 for t in J if t < a)
                out[a, j] = sign * self.coeffs[pos[tuple(sorted((a,) + J))]]
        return out

    def values(self, frames: np.ndarray) -> np.ndarray:
        """Form values for a (..., N, m) stack of column frames."""
        return kernels.form_values(self.coeffs, self.subsets, frames)

    def values_grads(self, frames: np.ndarray):
        return kernels.form_values_grads(
            self.coeffs, self.subsets, frames, self.subsets1, self.contract
        )


@dataclass
class ComassResult:
    value: float
    frame: Frame
    converged: bool
    iterations: int
    restarts: int

    def __iter__(self):
        yield self.value
        yield self.frame


def _retract(V: np.ndarray) -> np.ndarray:
    """QR retraction with the sign fix that keeps Q close to the input."""
    q, r = np.linalg.qr(V)
    signs = np.sign(np.sign(np.einsum("...ii->...i", r)) + 0.5)
    return q * signs[..., None, :]


def comass(
    omega: MultiVector,
    restarts: int = 200,
    tol: float = 1e-9,
    max_iter: int = 5000,
    seed: int = 0,
) -> ComassResult:
    """Largest |omega(X_1, .., X_m)| over orthonormal frames, with argmax.

    Returns the best value over ``restarts`` independent ascents; the frame
    achieves the value with a positive sign.  A non-converged best restart
    is reported through the ``converged`` flag and a warning.
    """
    if omega.grade < 1:
        raise ValueError("comass needs a form of grade >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if np.all(omega.coeffs == 0.0):
        return ComassResult(0.0, Frame.standard(omega.dim, omega.grade), True, 0, restarts)

    rng = np.random.default_rng(seed)
    ev = FormEvaluator(omega)
    V = random_frames(omega.dim, omega.grade, restarts, rng)
    alpha = np.full(restarts, 0.5)
    done = np.zeros(restarts, dtype=bool)
    stalls = np.zeros(restarts, dtype=np.int64)
    f = ev.values(V)
    iters = 0
    armijo = 0.1

    for iters in range(1, max_iter + 1):
        active = np.flatnonzero(~done)
        if active.size == 0:
            break
        Va = V[active]
        fa, Ga = ev.values_grads(Va)
        sign = np.where(fa >= 0, 1.0, -1.0)
        G = Ga * sign[:, None, None]
        VtG = np.einsum("bnk,bnl->bkl", Va, G)
        grad = G - np.einsum("bnk,bkl->bnl", Va, (VtG + VtG.transpose(0, 2, 1)) / 2)
        gnorm2 = np.einsum("bnk,bnk->b", grad, grad)
        small = np.sqrt(gnorm2) <= tol * np.maximum(1.0, np.abs(fa))
        done[active[small]] = True
        f[active] = fa

        live = np.flatnonzero(~small)
        a = alpha[active][live]
        fl = np.abs(fa[live])
        Vl, gl, g2 = Va[live], grad[live], gnorm2[live]
        accepted = np.zeros(live.size, dtype=bool)
        for _ in range(40):
            pending = np.flatnonzero(~accepted)
            if pending.size == 0:
                break
            trial = _retract(Vl[pending] + a[pending, None, None] * gl[pending])
            ftrial = ev.values(trial)
            good = np.abs(ftrial) >= fl[pending] + armijo * a[pending] * g2[pending]
            idx = pending[good]
            Vl[idx] = trial[good]
            fl[idx] = np.abs(ftrial[good])
            accepted[idx] = True
            a[pending[~good]] *= 0.5
            stuck = pending[~good][a[pending[~good]] < 1e-14]
            accepted[stuck] = True  # no admissible step left: treat as converged
            done[active[live[stuck]]] = True
        rows = active[live]
        gained = fl - np.abs(f[rows])
        tiny = gained <= 1e-14 * np.maximum(1.0, fl)
        stalls[rows] = np.where(tiny, stalls[rows] + 1, 0)
        done[rows[stalls[rows] >= 3]] = True
        V[rows] = Vl
        f[rows] = fl
        alpha[rows] = np.minimum(a * 2.0, 1.0)

    if not done.all():
        warnings.warn(
            f"comass ascent hit the {max_iter}-iteration cap on "
            f"{int((~done).sum())}/{restarts} restarts; reporting best found",
            RuntimeWarning,
        )
    best = int(np.argmax(np.abs(f)))
    Vbest = V[best].copy()
    fbest = float(ev.values(Vbest[None])[0])
    if fbest < 0 and omega.grade >= 2:
        Vbest[:, [0, 1]] = Vbest[:, [1, 0]]
    elif fbest < 0:
        Vbest = -Vbest
    frame = Frame(Vbest.T)
    return ComassResult(abs(fbest), frame, bool(done[best]), iters, restarts)
