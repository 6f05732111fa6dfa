"""Numpy implementation of the hot form-evaluation kernels.

Both kernels treat a constant m-form as (coeffs, subsets): the coefficient
vector over increasing m-subsets of row indices.  Frames are (..., N, m)
stacks with frame vectors as columns, so the form value is the
coefficient-weighted sum of m x m row minors.
"""

import numpy as np

BACKEND = "python"


def form_values(coeffs, subsets, frames):
    """Values of the form on a stack of frames: sum_I c_I det(V[I, :])."""
    minors = np.linalg.det(frames[..., subsets, :])
    return minors @ coeffs


def form_values_grads(coeffs, subsets, frames, subsets1, contract):
    """Form values and their gradients with respect to frame entries.

    ``subsets1`` lists the (m-1)-subsets and ``contract`` is the (N, S1)
    matrix with entries sign(a, J) * c_{sort({a} u J)} (zero when a is in J),
    so that the gradient in slot k is (-1)^k * contract @ minors(other
    columns).  Returns (values, grads) with grads shaped like ``frames``.
    """
    m = frames.shape[-1]
    values = form_values(coeffs, subsets, frames)
    grads = np.empty_like(frames)
    cols = np.arange(m)
    for k in range(m):
        others = frames[..., :, cols != k]
        if m == 1:
            minors1 = np.ones(frames.shape[:-2] + (1,))
        else:
            minors1 = np.linalg.det(others[..., subsets1, :])
        grads[..., :, k] = ((-1) ** k) * (minors1 @ contract.T)
    return values, grads
