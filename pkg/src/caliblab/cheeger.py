"""Discrete and mesh-based estimation of the boundary-to-volume
isoperimetric constant: exact enumeration on small weighted graphs, sweep
cuts, level-set bounds, metric-ball profiles, Dirichlet eigenvalue bounds,
and the convex-vector-field inequality for immersed submanifolds.

Discrete convention: the minimum runs over connected vertex sets carrying
at most half of the total volume.  The unnormalized infimum degenerates on
finite models, so the continuum-style estimators (ball profiles, level
bounds) are the ones that follow the boundary-area/volume definition
verbatim; both conventions are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigh

from .immersion import Immersion
from .numdiff import gradient as fd_gradient
from .subgeom import frame_at


class WeightedGraph:
    """Vertex volumes and edge areas on an undirected graph."""

    def __init__(self, volumes, edges):
        """volumes: sequence of positive reals; edges: {(u, v): area}."""
        self.volumes = np.asarray(volumes, dtype=float)
        if np.any(self.volumes <= 0):
            raise ValueError("vertex volumes must be positive")
        self.n = self.volumes.shape[0]
        self.edges = {}
        self.adj = [[] for _ in range(self.n)]
        for (u, v), area in edges.items():
            u, v = int(u), int(v)
            if u == v:
                raise ValueError("self-loops are not allowed")
            if area <= 0:
                raise ValueError("edge areas must be positive")
            key = (min(u, v), max(u, v))
            if key in self.edges:
                raise ValueError(f"duplicate edge {key}")
            self.edges[key] = float(area)
            self.adj[u].append((v, float(area)))
            self.adj[v].append((u, float(area)))
        if not self.connected(frozenset(range(self.n))):
            raise ValueError("graph must be connected")

    def connected(self, subset) -> bool:
        subset = set(subset)
        if not subset:
            return False
        stack = [next(iter(subset))]
        seen = {stack[0]}
        while stack:
            u = stack.pop()
            for v, _ in self.adj[u]:
                if v in subset and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen == subset

    def cut_area(self, subset) -> float:
        subset = set(subset)
        total = 0.0
        for (u, v), area in self.edges.items():
            if (u in subset) != (v in subset):
                total += area
        return total

    def volume(self, subset=None) -> float:
        if subset is None:
            return float(self.volumes.sum())
        return float(sum(self.volumes[v] for v in subset))

    def ratio(self, subset) -> float:
        return self.cut_area(subset) / self.volume(subset)

    @staticmethod
    def from_text(text: str) -> "WeightedGraph":
        """Edge-list format: lines "u v area" for edges and "v volume" for
        vertex volumes; unlisted vertices get volume 1."""
        names: dict[str, int] = {}
        edge_spec = []
        vol_spec = {}

        def index(tok: str) -> int:
            if tok not in names:
                names[tok] = len(names)
            return names[tok]

        for lineno, line in enumerate(text.splitlines(), start=1):
            parts = line.split("#")[0].split()
            if not parts:
                continue
            if len(parts) == 3:
                u, v, area = index(parts[0]), index(parts[1]), float(parts[2])
                edge_spec.append(((u, v), area))
            elif len(parts) == 2:
                vol_spec[index(parts[0])] = float(parts[1])
            else:
                raise ValueError(f"line {lineno}: expected 'u v area' or 'v volume'")
        volumes = np.ones(len(names))
        for v, vol in vol_spec.items():
            volumes[v] = vol
        return WeightedGraph(volumes, dict(edge_spec))


@dataclass
class CheegerEstimate:
    value: float
    witness: frozenset
    method: str

    def reevaluate(self, graph: WeightedGraph) -> float:
        return graph.ratio(self.witness)


def bruteforce_cheeger(graph: WeightedGraph) -> CheegerEstimate:
    """Exact minimum of cut-area over volume across connected subsets with
    at most half of the total volume."""
    n = graph.n
    if n > 20:
        raise ValueError("exact enumeration is capped at 20 vertices")
    half = graph.volume() / 2.0
    neighbor_mask = [0] * n
    for u in range(n):
        for v, _ in graph.adj[u]:
            neighbor_mask[u] |= 1 << v
    vols = graph.volumes
    best = np.inf
    best_set = None
    for mask in range(1, 1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        vol = float(vols[members].sum())
        if vol > half + 1e-12:
            continue
        # connectivity by bitwise flood fill
        seen = 1 << members[0]
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= neighbor_mask[v] & mask & ~seen
            seen |= nxt
            frontier = nxt
        if seen != mask:
            continue
        ratio = graph.cut_area(members) / vol
        if ratio < best - 1e-15:
            best = ratio
            best_set = frozenset(members)
    return CheegerEstimate(best, best_set, "bruteforce")


def sweep_cheeger(graph: WeightedGraph, f) -> CheegerEstimate:
    """Best threshold cut of a vertex function (sublevel sets of f and of
    -f); an upper bound for the exact constant."""
    f = np.asarray(f, dtype=float)
    if np.all(f == f[0]):
        raise ValueError("sweep needs a non-constant vertex function")
    total = graph.volume()
    best = np.inf
    best_set = None
    for sign in (1.0, -1.0):
        values = sign * f
        order = np.argsort(values, kind="stable")
        members: set[int] = set()
        for idx, v in enumerate(order[:-1]):
            members.add(int(v))
            if idx + 1 < len(order) and values[order[idx + 1]] == values[v]:
                continue  # only cut between distinct values
            vol = graph.volume(members)
            side = members if vol <= total / 2 else set(range(graph.n)) - members
            vol_side = graph.volume(side)
            if vol_side <= 0:
                continue
            ratio = graph.cut_area(side) / vol_side
            if ratio < best:
                best = ratio
                best_set = frozenset(side)
    return CheegerEstimate(best, best_set, "sweep")


def level_average_bound(f_vals, grad_norms, weights, threshold: float):
    """Continuum-style upper bound mean(|grad f|) / (s - mean(|f|)) over the
    region |f| <= s of a meshed domain."""
    f_vals = np.asarray(f_vals, dtype=float)
    grad_norms = np.asarray(grad_norms, dtype=float)
    weights = np.asarray(weights, dtype=float)
    mask = np.abs(f_vals) <= threshold
    vol = float(weights[mask].sum())
    if vol <= 0:
        raise ValueError("threshold excludes the whole mesh")
    mean_grad = float((weights[mask] * grad_norms[mask]).sum() / vol)
    mean_abs = float((weights[mask] * np.abs(f_vals[mask])).sum() / vol)
    if threshold <= mean_abs:
        raise ValueError("denominator s - mean|f| is not positive")
    return mean_grad / (threshold - mean_abs), mean_grad, mean_abs


def ball_ratio_profile(curvature: float, dim: int, radii):
    """Boundary-area to volume ratios of metric balls in the simply
    connected space form of the given curvature (<= 0), by quadrature of
    the geodesic polar area element; returns (ratios, running_min)."""
    if curvature > 0:
        raise ValueError("profiles implemented for curvature <= 0")

    if curvature == 0.0:
        def area(r):
            return r ** (dim - 1)
    else:
        k = np.sqrt(-curvature)

        def area(r):
            return (np.sinh(k * r) / k) ** (dim - 1)

    ratios = []
    for r in radii:
        vol, _ = quad(area, 0.0, r, limit=200)
        ratios.append(area(r) / vol)
    ratios = np.array(ratios)
    return ratios, np.minimum.accumulate(ratios)


def graph_laplacian(graph: WeightedGraph) -> np.ndarray:
    L = np.zeros((graph.n, graph.n))
    for (u, v), area in graph.edges.items():
        L[u, u] += area
        L[v, v] += area
        L[u, v] -= area
        L[v, u] -= area
    return L


def dirichlet_lambda1(graph: WeightedGraph, interior, max_iter: int = 500,
                      tol: float = 1e-14):
    """Smallest Dirichlet eigenvalue of the volume-weighted graph Laplacian
    on a vertex subset, by inverse iteration; returns (lambda1, 2 sqrt(l1),
    eigenvector on the subset)."""
    interior = sorted(set(int(v) for v in interior))
    if not interior:
        raise ValueError("empty interior")
    if len(interior) >= graph.n:
        raise ValueError("interior must be a proper subset (Dirichlet data)")
    L = graph_laplacian(graph)[np.ix_(interior, interior)]
    M = np.diag(graph.volumes[interior])
    try:
        np.linalg.cholesky(L)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular restricted Laplacian (disconnected interior)") from exc
    x = np.ones(len(interior))
    lam = 0.0
    for _ in range(max_iter):
        y = np.linalg.solve(L, M @ x)
        y /= np.sqrt(y @ M @ y)
        new_lam = float(y @ L @ y)
        if abs(new_lam - lam) <= tol * max(1.0, new_lam):
            x = y
            lam = new_lam
            break
        x, lam = y, new_lam
    return lam, 2.0 * np.sqrt(lam), x


def dirichlet_lambda1_dense(graph: WeightedGraph, interior) -> float:
    interior = sorted(set(int(v) for v in interior))
    L = graph_laplacian(graph)[np.ix_(interior, interior)]
    M = np.diag(graph.volumes[interior])
    return float(eigh(L, M, eigvals_only=True)[0])


# -- co-area machinery on structured grids ----------------------------------


def coarea_check(f, bounds, resolution: int = 201, tlevels: int = 400):
    """Flat-metric co-area consistency on a box: total variation of f
    against the integral of level-curve lengths; returns (lhs, rhs)."""
    (x0, x1), (y0, y1) = bounds
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    F = f(X, Y)
    dx = xs[1] - xs[0]
    dy = ys[1] - ys[0]
    # cell-centered total variation, matching the per-cell level segments
    gx = ((F[1:, :-1] + F[1:, 1:]) - (F[:-1, :-1] + F[:-1, 1:])) / (2.0 * dx)
    gy = ((F[:-1, 1:] + F[1:, 1:]) - (F[:-1, :-1] + F[1:, :-1])) / (2.0 * dy)
    lhs = float(np.sqrt(gx**2 + gy**2).sum() * dx * dy)
    tmin, tmax = float(F.min()), float(F.max())
    ts = np.linspace(tmin, tmax, tlevels + 2)[1:-1]
    lengths = np.array([level_length(F, xs, ys, t) for t in ts])
    rhs = float(np.trapezoid(lengths, ts))
    return lhs, rhs


def level_length(F, xs, ys, t) -> float:
    """Length of the level curve {f = t} by linear interpolation along the
    edges of each grid cell (marching-squares segments)."""
    total = 0.0
    nx, ny = F.shape
    for i in range(nx - 1):
        for j in range(ny - 1):
            corners = [
                (xs[i], ys[j], F[i, j]),
                (xs[i + 1], ys[j], F[i + 1, j]),
                (xs[i + 1], ys[j + 1], F[i + 1, j + 1]),
                (xs[i], ys[j + 1], F[i, j + 1]),
            ]
            pts = []
            for a in range(4):
                x1, y1, f1 = corners[a]
                x2, y2, f2 = corners[(a + 1) % 4]
                if (f1 - t) * (f2 - t) < 0:
                    lam = (t - f1) / (f2 - f1)
                    pts.append((x1 + lam * (x2 - x1), y1 + lam * (y2 - y1)))
            if len(pts) == 2:
                total += np.hypot(pts[0][0] - pts[1][0], pts[0][1] - pts[1][1])
    return total


# -- convex vector fields -----------------------------------------------------


@dataclass
class ConvexFieldReport:
    sup_field: float
    sup_H: float
    h_estimate: float
    alpha: float
    lhs: float
    rhs: float
    identity_residual: float
    convexity_margin: float

    def holds(self, tol: float = 1e-9) -> bool:
        return self.lhs <= self.rhs + tol


def convex_field_bound(imm: Immersion, field, mesh, alpha: float,
                       h_estimate: float, samples=None,
                       step: float = 1e-5) -> ConvexFieldReport:
    """Evaluates 1/sup||X|| <= (h/m + sup||H||)/alpha on a meshed immersed
    domain, verifies strong convexity of the field on samples, and checks
    the pointwise divergence identity m<H, X> = div(X^T) - tr L/2 at the
    first few interior nodes.

    The ambient field is a callable p -> vector; its derivative is taken by
    central differences.
    """
    space = imm.ambient
    m = imm.m
    sup_field = 0.0
    sup_H = 0.0
    for u in mesh.nodes:
        fp = frame_at(imm, u)
        gbar = space.metric(fp.point)
        Xp = np.asarray(field(fp.point), dtype=float)
        sup_field = max(sup_field, float(np.sqrt(Xp @ gbar @ Xp)))
        sup_H = max(sup_H, fp.norm_H())

    # convexity certificate and identity spot checks
    check_nodes = mesh.nodes[:: max(1, len(mesh.nodes) // 16)]
    convexity_margin = np.inf
    identity_residual = 0.0
    for u in check_nodes:
        fp = frame_at(imm, u)
        p = fp.point
        gbar = space.metric(p)
        gam = space.christoffels(p)
        dX = fd_gradient(lambda q: np.asarray(field(q), dtype=float), p, h=step)
        covX = dX + np.einsum("lmn,n->lm", gam, np.asarray(field(p), dtype=float))
        lie = gbar @ covX + (gbar @ covX).T
        margin = float(np.linalg.eigvalsh(lie - 2.0 * alpha * gbar).min())
        convexity_margin = min(convexity_margin, margin)

        def tangential(v):
            q = frame_at(imm, v)
            gb = space.metric(q.point)
            Xq = np.asarray(field(q.point), dtype=float)
            comp = q.tangent @ gb @ Xq          # frame components of X^T
            return q.coframe @ comp             # coordinate components

        F, dF, _ = imm.jet(u)
        g = dF.T @ gbar @ dF

        def flux(v):
            Fv, dFv, _ = imm.jet(v)
            gv = dFv.T @ space.metric(Fv) @ dFv
            return np.sqrt(np.linalg.det(gv)) * tangential(v)

        div = 0.0
        for i in range(m):
            e = np.zeros(m)
            e[i] = step * 10
            div += (flux(u + e)[i] - flux(u - e)[i]) / (2.0 * step * 10)
        div /= np.sqrt(np.linalg.det(g))
        trace_lie = float(np.einsum("ab,al,lm,bm->", np.eye(m),
                                    fp.tangent, lie, fp.tangent))
        lhs_id = m * float(fp.H @ gbar @ np.asarray(field(p), dtype=float))
        identity_residual = max(identity_residual,
                                abs(lhs_id - (div - 0.5 * trace_lie)))

    lhs = 1.0 / sup_field if sup_field > 0 else np.inf
    rhs = (h_estimate / m + sup_H) / alpha
    return ConvexFieldReport(sup_field, sup_H, h_estimate, alpha, lhs, rhs,
                             identity_residual, convexity_margin)
