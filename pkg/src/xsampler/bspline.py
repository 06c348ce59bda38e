"""Centered cardinal B-splines in closed form."""
from math import comb, factorial

import numpy as np


def bspline(order: int, x) -> np.ndarray:
    """Centered B-spline ``B_order`` supported on ``[-order/2, order/2]``.

    ``B_1`` is the indicator of ``(-1/2, 1/2]`` and ``B_{n+1} = B_n * B_1``.
    Evaluated with the truncated-power formula, so ``sum_k B_n(x - k) = 1``.
    """
    if order < 1:
        raise ValueError(f"B-spline order must be >= 1, got {order}")
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    half = order / 2
    for j in range(order + 1):
        u = x + half - j
        if order == 1:
            term = (u > 0).astype(float)
        else:
            term = np.where(u > 0, u, 0.0) ** (order - 1)
        out = out + (-1) ** j * comb(order, j) * term
    out = out / factorial(order - 1)
    if order > 1:
        # cancellation leaves rounding noise outside the support
        out = np.where(np.abs(x) < half, out, 0.0)
    return np.where(out < 0, 0.0, out)
