"""Shared random-graph generator: volumes equal to incident edge weight, so
the eigenvalue-based upper bound is guaranteed for the discrete constant."""

import numpy as np

from caliblab.cheeger import WeightedGraph


def conductance_graph(rng, nmax: int = 14) -> WeightedGraph:
    n = int(rng.integers(4, nmax + 1))
    while True:
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.uniform() < 0.35:
                    edges[(i, j)] = float(rng.uniform(0.2, 2.0))
        if not edges:
            continue
        deg = np.zeros(n)
        for (u, v), a in edges.items():
            deg[u] += a
            deg[v] += a
        if np.all(deg > 0):
            try:
                return WeightedGraph(deg, edges)
            except ValueError:
                continue
