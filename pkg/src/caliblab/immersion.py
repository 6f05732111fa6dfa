"""Immersions of a parameter box into an ambient space, with order-2 jets.

Expression-defined immersions get exact jets from the forward-jet
evaluator; the built-in constant-mean-curvature graphs over the hyperbolic
ball use closed-form radial derivatives (their profile value needs one
adaptive quadrature).
"""

from __future__ import annotations

from math import comb

import numpy as np
from scipy.integrate import quad

from .ambient import AmbientSpace, Euclidean, product_hyperbolic_line
from .exprmap import ExprMap


class Immersion:
    """Base class: subclasses provide jet(u) -> (F, dF, d2F)."""

    m: int
    ambient: AmbientSpace
    parallel_mean_curvature = False

    def jet(self, u):
        raise NotImplementedError

    def value(self, u):
        return self.jet(u)[0]


class ExprImmersion(Immersion):
    """One expression per ambient coordinate."""

    def __init__(self, sources, m: int, ambient: AmbientSpace | None = None,
                 parallel_mean_curvature: bool = False):
        self.map = ExprMap(sources, m)
        self.m = m
        self.ambient = Euclidean(self.map.n) if ambient is None else ambient
        if self.ambient.dim != self.map.n:
            raise ValueError("ambient dimension does not match expression count")
        self.parallel_mean_curvature = parallel_mean_curvature

    def jet(self, u):
        vals, jac, hess = self.map.jet(u)
        return vals, jac, hess


class GraphImmersion(Immersion):
    """Graph u -> (u, f(u)) of an expression map into a product ambient."""

    def __init__(self, f_sources, m: int, ambient: AmbientSpace | None = None,
                 parallel_mean_curvature: bool = False):
        self.f = ExprMap(f_sources, m)
        self.m = m
        n = self.f.n
        self.ambient = Euclidean(m + n) if ambient is None else ambient
        if self.ambient.dim != m + n:
            raise ValueError("ambient dimension does not match graph dimensions")
        self.parallel_mean_curvature = parallel_mean_curvature

    def jet(self, u):
        u = np.asarray(u, dtype=float)
        m, n = self.m, self.f.n
        fv, fj, fh = self.f.jet(u)
        F = np.concatenate([u, fv])
        dF = np.vstack([np.eye(m), fj])
        d2F = np.concatenate([np.zeros((m, m, m)), fh], axis=0)
        return F, dF, d2F


# -- built-in examples --------------------------------------------------


def plane_immersion(span_rows, offset=None) -> Immersion:
    """Affine plane: u -> offset + sum u_i span_i (flat ambient)."""
    span = np.asarray(span_rows, dtype=float)
    m, N = span.shape
    offset = np.zeros(N) if offset is None else np.asarray(offset, dtype=float)
    terms = []
    for a in range(N):
        parts = [repr(float(offset[a]))] + [
            f"({float(span[i, a])!r})*x{i + 1}" for i in range(m)
        ]
        terms.append("+".join(parts))
    return ExprImmersion(terms, m, parallel_mean_curvature=True)


def sphere_graph(radius: float = 1.0) -> Immersion:
    """Upper hemisphere graph over a disc; ||H|| = 1/radius everywhere."""
    return GraphImmersion(
        [f"sqrt({radius * radius!r} - x1^2 - x2^2)"], 2,
        parallel_mean_curvature=True,
    )


def catenoid_patch(a: float = 1.0) -> Immersion:
    """Parametric catenoid (minimal) in R^3."""
    return ExprImmersion(
        [
            f"{a!r}*cosh(x2)*cos(x1)",
            f"{a!r}*cosh(x2)*sin(x1)",
            f"{a!r}*x2",
        ],
        2,
        parallel_mean_curvature=True,
    )


def helicoid_graph(c: float = 0.5) -> Immersion:
    """Helicoid as the minimal graph f = c atan(y/x), valid away from x = 0."""
    return GraphImmersion([f"{c!r}*atan(x2/x1)"], 2, parallel_mean_curvature=True)


def sinh_power_integral(k: int, r: float) -> float:
    """Exact integral of sinh^k on [0, r] via the exponential expansion."""
    if r == 0.0:
        return 0.0
    total = 0.0
    for j in range(k + 1):
        e = k - 2 * j
        coeff = comb(k, j) * (-1.0) ** j
        if e == 0:
            total += coeff * r
        else:
            total += coeff * (np.exp(e * r) - 1.0) / e
    return total / 2.0**k


class CmcProfile:
    """Radial profile whose hyperbolic graph has mean curvature c/m.

    q(r) = c I(r)/sinh^{m-1}(r) with I(r) the integral of sinh^{m-1};
    the slope of the profile is q/sqrt(1-q^2).
    """

    def __init__(self, m: int, c: float):
        if m < 2:
            raise ValueError("profile needs base dimension m >= 2")
        if abs(c) > m - 1:
            raise ValueError(f"|c| = {abs(c)} exceeds m-1 = {m - 1}")
        self.m = m
        self.c = c

    def q(self, r: float) -> float:
        if r == 0.0:
            return 0.0
        return self.c * sinh_power_integral(self.m - 1, r) / np.sinh(r) ** (self.m - 1)

    def q_prime(self, r: float) -> float:
        if r == 0.0:
            return self.c / self.m
        return self.c - (self.m - 1) / np.tanh(r) * self.q(r)

    def slope(self, r: float) -> float:
        q = self.q(r)
        if abs(q) >= 1.0:
            raise ValueError(f"profile integrand leaves its domain at r = {r}")
        return q / np.sqrt(1.0 - q * q)

    def slope_prime(self, r: float) -> float:
        q = self.q(r)
        return self.q_prime(r) / (1.0 - q * q) ** 1.5

    def value(self, r: float, quad_tol: float = 1e-11) -> float:
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if r == 0.0:
            return 0.0
        val, err = quad(self.slope, 0.0, r, epsabs=quad_tol, epsrel=quad_tol, limit=200)
        if err > max(quad_tol, 1e-9) * max(1.0, abs(val)) * 10:
            raise RuntimeError(f"quadrature failed to converge (error {err})")
        return float(val)


class CmcHyperbolicGraph(Immersion):
    """Graph of the radial profile over the Poincare ball, inside H^m x R."""

    parallel_mean_curvature = True

    def __init__(self, m: int, c: float, offset: float = 0.0):
        self.profile = CmcProfile(m, c)
        self.m = m
        self.c = c
        self.offset = offset
        self.ambient = product_hyperbolic_line(m)

    def jet(self, u):
        u = np.asarray(u, dtype=float)
        m = self.m
        s2 = float(u @ u)
        if s2 >= 1.0:
            raise ValueError("parameter point outside the Poincare ball")
        s = np.sqrt(s2)
        if s < 1e-12:
            # f(x) ~ 2(c/m)|x|^2 near the origin, so the graph hessian is
            # 4(c/m) Id there
            F = np.concatenate([u, [self.offset]])
            dF = np.vstack([np.eye(m), np.zeros(m)])
            d2F = np.zeros((m + 1, m, m))
            d2F[m] = 4.0 * (self.c / m) * np.eye(m)
            return F, dF, d2F
        r = np.log((1.0 + s) / (1.0 - s))
        rp = 2.0 / (1.0 - s2)
        rpp = 4.0 * s / (1.0 - s2) ** 2
        phi = self.profile.slope(r)
        phip = self.profile.slope_prime(r)
        psi_p = phi * rp
        psi_pp = phip * rp * rp + phi * rpp
        fval = self.profile.value(r) + self.offset
        grad = psi_p * u / s
        outer = np.outer(u, u) / s2
        hess = psi_pp * outer + psi_p * (np.eye(m) - outer) / s
        F = np.concatenate([u, [fval]])
        dF = np.vstack([np.eye(m), grad])
        d2F = np.concatenate([np.zeros((m, m, m)), hess[None]], axis=0)
        return F, dF, d2F


BUILTIN_IMMERSIONS = {
    "plane": lambda: plane_immersion(np.eye(3)[:2]),
    "sphere-graph": sphere_graph,
    "catenoid": catenoid_patch,
    "helicoid-graph": helicoid_graph,
}


def make_immersion(name: str, **params) -> Immersion:
    if name == "cmc-hyperbolic":
        return CmcHyperbolicGraph(**params)
    if name in BUILTIN_IMMERSIONS:
        return BUILTIN_IMMERSIONS[name](**params)
    raise ValueError(f"unknown builtin immersion {name!r}")
