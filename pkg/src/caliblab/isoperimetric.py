"""Quadrature meshes over parameter domains and the integral inequalities
relating mean curvature, the calibrated angle, and boundary area.

Interior integrals use the induced volume element sqrt(det g) du; boundary
integrals use the induced (m-1)-volume of the facet tangent directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .immersion import Immersion
from .subgeom import as_ambient_form, frame_at, nabla_perp_H, phi_matrix


def simpson_weights(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite Simpson nodes/weights; n must be odd and >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError("simpson rule needs an odd number of nodes >= 3")
    x = np.linspace(lo, hi, n)
    h = (hi - lo) / (n - 1)
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return x, w * h / 3.0


@dataclass
class MeshDomain:
    """Interior nodes/weights plus boundary nodes with facet tangents.

    ``boundary_tangents`` holds, per boundary node, m-1 parameter-space
    tangent vectors of the facet; the induced area element is the Gram
    determinant of their pushforwards.  ``boundary_outward`` is an outward
    parameter direction used for co-normal quantities.
    """

    nodes: np.ndarray
    weights: np.ndarray
    boundary_nodes: np.ndarray
    boundary_weights: np.ndarray
    boundary_tangents: np.ndarray
    boundary_outward: np.ndarray

    @property
    def m(self) -> int:
        return self.nodes.shape[1]

    def integrate(self, values) -> float:
        return float(self.weights @ np.asarray(values))

    def integrate_boundary(self, values) -> float:
        return float(self.boundary_weights @ np.asarray(values))


def box_mesh(bounds, resolution: int = 129) -> MeshDomain:
    """Tensor-product Simpson mesh over a box; boundary = its 2m facets."""
    bounds = [(float(a), float(b)) for a, b in bounds]
    m = len(bounds)
    axes = [simpson_weights(resolution, a, b) for a, b in bounds]
    grids = np.meshgrid(*[x for x, _ in axes], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*[w for _, w in axes], indexing="ij")
    weights = np.prod(np.stack([w.ravel() for w in wgrids], axis=1), axis=1)

    bnodes, bweights, btans, bout = [], [], [], []
    for axis in range(m):
        other = [i for i in range(m) if i != axis]
        if other:
            sub_axes = [axes[i] for i in other]
            sub_grids = np.meshgrid(*[x for x, _ in sub_axes], indexing="ij")
            sub_nodes = np.stack([g.ravel() for g in sub_grids], axis=1)
            sub_w = np.prod(
                np.stack(
                    [w.ravel() for w in np.meshgrid(*[w for _, w in sub_axes], indexing="ij")],
                    axis=1,
                ),
                axis=1,
            )
        else:
            sub_nodes = np.zeros((1, 0))
            sub_w = np.ones(1)
        for side, value in enumerate(bounds[axis]):
            count = sub_nodes.shape[0]
            full = np.empty((count, m))
            full[:, axis] = value
            for pos, i in enumerate(other):
                full[:, i] = sub_nodes[:, pos]
            tans = np.zeros((count, m - 1, m))
            for pos, i in enumerate(other):
                tans[:, pos, i] = 1.0
            out = np.zeros((count, m))
            out[:, axis] = -1.0 if side == 0 else 1.0
            bnodes.append(full)
            bweights.append(sub_w)
            btans.append(tans)
            bout.append(out)
    return MeshDomain(
        nodes,
        weights,
        np.concatenate(bnodes),
        np.concatenate(bweights),
        np.concatenate(btans),
        np.concatenate(bout),
    )


def disc_mesh(radius: float, nr: int = 129, ntheta: int = 128,
              center=(0.0, 0.0)) -> MeshDomain:
    """Polar mesh of a disc: Simpson in radius, trapezoid in the angle
    (exact for periodic integrands), with the r Jacobian in the weights."""
    center = np.asarray(center, dtype=float)
    r, wr = simpson_weights(nr, 0.0, radius)
    theta = np.linspace(0.0, 2.0 * np.pi, ntheta, endpoint=False)
    wt = np.full(ntheta, 2.0 * np.pi / ntheta)
    R, T = np.meshgrid(r, theta, indexing="ij")
    nodes = np.stack(
        [center[0] + (R * np.cos(T)).ravel(), center[1] + (R * np.sin(T)).ravel()],
        axis=1,
    )
    weights = (np.outer(wr, wt) * r[:, None]).ravel()

    bnodes = np.stack(
        [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)],
        axis=1,
    )
    btans = np.zeros((ntheta, 1, 2))
    btans[:, 0, 0] = -radius * np.sin(theta)
    btans[:, 0, 1] = radius * np.cos(theta)
    bout = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return MeshDomain(nodes, weights, bnodes, wt, btans, bout)


# -- induced-metric integration ------------------------------------------


def volume_density(imm: Immersion, u) -> float:
    F, dF, _ = imm.jet(u)
    g = dF.T @ imm.ambient.metric(F) @ dF
    return float(np.sqrt(np.linalg.det(g)))


def boundary_density(imm: Immersion, u, tangents) -> float:
    F, dF, _ = imm.jet(u)
    gbar = imm.ambient.metric(F)
    push = tangents @ dF.T  # (m-1, N)
    gram = push @ gbar @ push.T
    return float(np.sqrt(np.linalg.det(gram)))


def outward_conormal(imm: Immersion, u, tangents, outward) -> np.ndarray:
    """Unit outward co-normal of a boundary facet in parameter coordinates,
    with respect to the induced metric."""
    F, dF, _ = imm.jet(u)
    g = dF.T @ imm.ambient.metric(F) @ dF
    nu = np.linalg.solve(g, np.asarray(outward, dtype=float))
    for t in np.asarray(tangents, dtype=float):
        tg = t @ g @ t
        if tg > 0:
            nu = nu - (nu @ g @ t) / tg * t
    return nu / np.sqrt(nu @ g @ nu)


def boundary_flux(imm: Immersion, mesh: MeshDomain, field) -> float:
    """Integral over the boundary of g(Z, nu) dA for a parameter-space
    vector field Z (callable u -> components)."""
    vals = np.empty(len(mesh.boundary_nodes))
    for idx, (u, t, o) in enumerate(zip(mesh.boundary_nodes, mesh.boundary_tangents,
                                        mesh.boundary_outward)):
        F, dF, _ = imm.jet(u)
        g = dF.T @ imm.ambient.metric(F) @ dF
        nu = outward_conormal(imm, u, t, o)
        vals[idx] = float(np.asarray(field(u)) @ g @ nu) * boundary_density(imm, u, t)
    return mesh.integrate_boundary(vals)


def interior_divergence(imm: Immersion, mesh: MeshDomain, field,
                        step: float = 1e-5) -> float:
    """Integral over the domain of div(Z) dV for a parameter-space field,
    via the divergence form d_i(sqrt(g) Z^i)/sqrt(g)."""
    def flux(u):
        F, dF, _ = imm.jet(u)
        g = dF.T @ imm.ambient.metric(F) @ dF
        return np.sqrt(np.linalg.det(g)) * np.asarray(field(u), dtype=float)

    m = mesh.m
    vals = np.empty(len(mesh.nodes))
    for idx, u in enumerate(mesh.nodes):
        div = 0.0
        for i in range(m):
            e = np.zeros(m)
            e[i] = step
            div += (flux(u + e)[i] - flux(u - e)[i]) / (2.0 * step)
        vals[idx] = div  # sqrt(g) cancels against the volume density
    return mesh.integrate(vals)


def induced_volume(imm: Immersion, mesh: MeshDomain) -> float:
    return mesh.integrate([volume_density(imm, u) for u in mesh.nodes])


def induced_boundary_area(imm: Immersion, mesh: MeshDomain) -> float:
    return mesh.integrate_boundary(
        [
            boundary_density(imm, u, t)
            for u, t in zip(mesh.boundary_nodes, mesh.boundary_tangents)
        ]
    )


@dataclass
class IsoperimetricReport:
    lhs: float                 # |integral of (-m cos(theta) |H|^2 + <grad H, Phi>)|
    rhs: float                 # boundary integral of sin(theta) |H|
    slack: float
    volume: float
    area: float
    inf_cos: float
    sup_sin_boundary: float
    mean_H: float
    ratio_bound: float         # (1/m)(sup sin / inf cos)(A/V)

    def holds(self, tol: float = 1e-6) -> bool:
        """Nonnegative slack up to quadrature error (relative to scale);
        equality cases sit at slack ~ 0 within the scheme's accuracy."""
        return self.slack >= -tol * max(1.0, self.lhs, self.rhs)


def integral_isoperimetric(imm: Immersion, omega, mesh: MeshDomain,
                           nabla_h_step: float = 1e-4) -> IsoperimetricReport:
    """Both sides of the mean-curvature isoperimetric inequality on a meshed
    domain, plus the angle-ratio bound that follows from it."""
    if mesh.m != imm.m:
        raise ValueError("mesh dimension does not match the immersion")
    form = as_ambient_form(omega, imm.ambient)
    m = imm.m
    skip_nabla = imm.parallel_mean_curvature

    interior = np.empty(len(mesh.nodes))
    cos_vals = np.empty(len(mesh.nodes))
    H_vals = np.empty(len(mesh.nodes))
    vol_d = np.empty(len(mesh.nodes))
    for idx, u in enumerate(mesh.nodes):
        fp = frame_at(imm, u, omega=form)
        H2 = float(fp.H_frame @ fp.H_frame)
        term = -m * fp.cos_theta * H2
        if not skip_nabla:
            phi = phi_matrix(form, fp.point, fp.tangent, fp.normal)
            nH = nabla_perp_H(imm, u, fp, step=nabla_h_step)
            term += float(np.sum(nH * phi.T))
        vol_d[idx] = np.sqrt(np.linalg.det(fp.metric))
        interior[idx] = term * vol_d[idx]
        cos_vals[idx] = fp.cos_theta
        H_vals[idx] = np.sqrt(H2)

    bvals = np.empty(len(mesh.boundary_nodes))
    sin_b = np.empty(len(mesh.boundary_nodes))
    for idx, (u, t) in enumerate(zip(mesh.boundary_nodes, mesh.boundary_tangents)):
        fp = frame_at(imm, u, omega=form)
        dens = boundary_density(imm, u, t)
        sin_b[idx] = fp.sin_theta
        bvals[idx] = fp.sin_theta * fp.norm_H() * dens

    lhs = abs(mesh.integrate(interior))
    rhs = mesh.integrate_boundary(bvals)
    volume = mesh.integrate(vol_d)
    area = induced_boundary_area(imm, mesh)
    inf_cos = float(cos_vals.min())
    sup_sin = float(sin_b.max())
    mean_H = float(mesh.integrate(H_vals * vol_d) / volume)
    ratio_bound = (sup_sin / inf_cos) * area / (m * volume) if inf_cos > 0 else np.inf
    return IsoperimetricReport(
        lhs, rhs, rhs - lhs, volume, area, inf_cos, sup_sin, mean_H, ratio_bound
    )


def heinz_radius_check(c: float, disc_radius: float, tol: float = 1e-9) -> bool:
    """Graphs over a disc of radius r with |H| >= c > 0 force r <= 1/c."""
    if c <= 0:
        raise ValueError("needs a positive mean-curvature lower bound")
    return disc_radius <= 1.0 / c + tol
