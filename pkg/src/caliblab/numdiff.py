"""Central-difference helpers with optional Richardson extrapolation."""

from __future__ import annotations

import numpy as np


def central(fn, u, direction: int, h: float):
    u = np.asarray(u, dtype=float)
    e = np.zeros_like(u)
    e[direction] = h
    return (np.asarray(fn(u + e)) - np.asarray(fn(u - e))) / (2.0 * h)


def central_richardson(fn, u, direction: int, h: float):
    """Fourth-order derivative estimate from steps h and h/2."""
    d1 = central(fn, u, direction, h)
    d2 = central(fn, u, direction, h / 2.0)
    return (4.0 * d2 - d1) / 3.0


def gradient(fn, u, h: float = 1e-5, richardson: bool = False):
    """Jacobian of a (possibly vector-valued) function by central differences;
    derivative direction is the last axis of the result."""
    u = np.asarray(u, dtype=float)
    step = central_richardson if richardson else central
    cols = [step(fn, u, i, h) for i in range(u.shape[0])]
    return np.stack(cols, axis=-1)
