"""Octonion arithmetic from Cayley-Dickson doubling of the quaternions.

Convention: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)), applied once to
pairs of quaternions.  The basis is 1, e1, .., e7 with (e1, e2, e3) the
quaternion units (e1 e2 = e3) and e4 = (0, 1).  Every derived product
(cross products, associator) uses this one table, so the suite's sign
conventions are internally consistent by construction.
"""

from __future__ import annotations

import numpy as np


def quaternion_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def quaternion_conj(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def _build_table() -> np.ndarray:
    """MUL[a, b, :] = e_a * e_b over the 8-dimensional basis."""
    table = np.zeros((8, 8, 8))
    basis = np.eye(8)
    for a in range(8):
        for b in range(8):
            p, q = basis[a], basis[b]
            p1, p2 = p[:4], p[4:]
            q1, q2 = q[:4], q[4:]
            head = quaternion_mul(p1, q1) - quaternion_mul(quaternion_conj(q2), p2)
            tail = quaternion_mul(q2, p1) + quaternion_mul(p2, quaternion_conj(q1))
            table[a, b, :4] = head
            table[a, b, 4:] = tail
    return table


MUL_TABLE = _build_table()


def octonion_mul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.einsum("abk,a,b->k", MUL_TABLE, a, b)


def octonion_conj(a) -> np.ndarray:
    out = -np.asarray(a, dtype=float)
    out[0] = -out[0]
    return out


def imaginary_embed(v7) -> np.ndarray:
    """R^7 -> Im(O)."""
    out = np.zeros(8)
    out[1:] = np.asarray(v7, dtype=float)
    return out


def triple_cross(x, y, z) -> np.ndarray:
    """Three-fold cross product (1/2)(x (conj(y) z) - z (conj(y) x))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    return 0.5 * (
        octonion_mul(x, octonion_mul(octonion_conj(y), z))
        - octonion_mul(z, octonion_mul(octonion_conj(y), x))
    )


def associator(x, y, z) -> np.ndarray:
    """[x, y, z] = (xy)z - x(yz); vanishes on any quaternion subalgebra."""
    return octonion_mul(octonion_mul(x, y), z) - octonion_mul(x, octonion_mul(y, z))


def cross7(u, v) -> np.ndarray:
    """Seven-dimensional cross product: Im(u v) for imaginary u, v."""
    prod = octonion_mul(imaginary_embed(u), imaginary_embed(v))
    return prod[1:]
