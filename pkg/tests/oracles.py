"""Independent computational oracles shared across test modules.

These deliberately take different algebraic routes than the package code:
the integer-power closed form for uniform weights, and a monomial-basis
per-cell integration for arbitrary node sequences.
"""

import math

import numpy as np


def closed_form_weight_matrix(alpha: float, grid) -> np.ndarray:
    """Uniform-grid weights via the textbook closed form in integer powers,
    scaled by h^alpha / Gamma(alpha + 2)."""
    n, h = grid.n, grid.spacing
    scale = h**alpha / math.gamma(alpha + 2.0)
    w = np.zeros((n + 1, n + 1))
    for i in range(1, n + 1):
        w[i, 0] = (i - 1.0) ** (alpha + 1.0) - (i - alpha - 1.0) * i**alpha
        for k in range(1, i):
            j = i - k
            w[i, k] = (
                (j + 1.0) ** (alpha + 1.0)
                - 2.0 * j ** (alpha + 1.0)
                + (j - 1.0) ** (alpha + 1.0)
            )
        w[i, i] = 1.0
    return scale * w


def kernel_linear_cells(alpha: float, nodes, values, i: int) -> float:
    """Integral of (u_i - u)^(alpha-1)/Gamma(alpha) against the interpolant
    written per cell as p + q*u (monomial basis, a different grouping than
    the hat-function accumulation in the package)."""
    total = []
    ui = nodes[i]
    for j in range(i):
        u0, u1 = nodes[j], nodes[j + 1]
        q = (values[j + 1] - values[j]) / (u1 - u0)
        p = values[j] - q * u0
        v0, v1 = ui - u0, ui - u1
        term = (p + q * ui) * (v0**alpha - v1**alpha) / alpha - q * (
            v0 ** (alpha + 1.0) - v1 ** (alpha + 1.0)
        ) / (alpha + 1.0)
        total.append(term)
    return math.fsum(total) / math.gamma(alpha)
