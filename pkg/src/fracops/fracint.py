"""Fractional integration of positive order via product-trapezoid weights.

The operator of order ``alpha`` convolves a function against the kernel
(t - s)^(alpha-1) / Gamma(alpha) from the left endpoint. Row i of the
weight matrix integrates that kernel exactly against the piecewise-linear
interpolant of the integrand up to node i, so the scheme is exact on
(piecewise-)linear data and second order on smooth data.

The weight builder works on arbitrary strictly increasing node sequences;
the Stieltjes module reuses it on image nodes u_k = h(t_k).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .discretization import (
    Grid,
    NormOrder,
    SampledFunction,
    TriangularOperator,
    lp_norm,
    operator_norm,
)
from .gammafn import gamma

# Order clamp: Gamma(alpha) blows up as alpha -> 0+ and the weight
# cancellation degrades, so very small and very large orders are rejected.
ORDER_MIN = 1e-3
ORDER_MAX = 100.0

# Operator-level continuity scans stay away from the alpha -> 0 blow-up.
SCAN_ORDER_MIN = 0.1
SCAN_ORDER_MAX = 10.0


def check_order(alpha: float) -> float:
    """Validate a fractional order against the [1e-3, 100] clamp."""
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < ORDER_MIN or alpha > ORDER_MAX:
        raise ValueError(
            f"order must lie in [{ORDER_MIN}, {ORDER_MAX}], got {alpha!r}"
        )
    return alpha


def rl_kernel(alpha: float, a: float, t: float) -> float:
    """Kernel value (t - a)^(alpha-1) / Gamma(alpha), defined for t > a."""
    alpha = check_order(alpha)
    if t <= a:
        raise ValueError(f"kernel requires t > a, got t={t}, a={a}")
    return (t - a) ** (alpha - 1.0) / gamma(alpha)


def product_trapezoid_weights(alpha: float, nodes: Sequence[float]) -> np.ndarray:
    """Lower-triangular weight matrix on an increasing node sequence.

    Row i holds weights w such that sum_k w[k] * f(nodes[k]) equals
    integral_{u_0}^{u_i} (u_i - u)^(alpha-1)/Gamma(alpha) * L(u) du
    exactly, where L is the piecewise-linear interpolant of f. Weights are
    accumulated cell by cell from the hat-function integrals; powers are
    taken of node distances (never of bare indices) to keep the second
    differencing well conditioned. Row 0 is zero.
    """
    alpha = check_order(alpha)
    u = np.asarray(nodes, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("need at least two nodes")
    delta = np.diff(u)
    if np.any(delta <= 0.0):
        raise ValueError("nodes must be strictly increasing")

    dist = np.maximum(u[:, None] - u[None, :], 0.0)
    pow_a = dist**alpha
    pow_a1 = dist * pow_a
    d_a = pow_a[:, :-1] - pow_a[:, 1:]
    d_a1 = pow_a1[:, :-1] - pow_a1[:, 1:]

    # Hat-function integrals over cell j against the kernel anchored at u_i:
    # ``right`` multiplies the value at node j+1, ``left`` the value at j.
    right = (dist[:, :-1] * d_a / alpha - d_a1 / (alpha + 1.0)) / delta
    left = (d_a1 / (alpha + 1.0) - dist[:, 1:] * d_a / alpha) / delta

    weights = np.zeros((u.size, u.size))
    weights[:, 1:] += right
    weights[:, :-1] += left
    weights /= gamma(alpha)
    return np.tril(weights)


def rl_weights(alpha: float, grid: Grid) -> TriangularOperator:
    """Weight matrix of the order-``alpha`` integral on a uniform grid."""
    return TriangularOperator(product_trapezoid_weights(alpha, grid.nodes), grid)


def rl_integrate(f: SampledFunction, alpha: float) -> SampledFunction:
    """Order-``alpha`` integral of f from the left endpoint; result[0] = 0."""
    op = rl_weights(alpha, f.grid)
    return SampledFunction(f.grid, op.apply(f.values))


def index_law_residual(
    f: SampledFunction, alpha: float, beta: float, p: NormOrder
) -> float:
    """Norm of I^alpha(I^beta f) - I^(alpha+beta) f on f's grid."""
    composed = rl_integrate(rl_integrate(f, beta), alpha)
    direct = rl_integrate(f, alpha + beta)
    return lp_norm(composed - direct, p)


def continuity_scan(
    f_probe: SampledFunction, alphas: Sequence[float], p: NormOrder
) -> list[tuple[float, float]]:
    """Operator-norm gaps between weight matrices at consecutive orders.

    Returns one (alpha_i, gap_i) pair per consecutive pair of orders,
    where gap_i is the induced-norm distance between the operators at
    alpha_i and alpha_{i+1} on the probe's grid. The probe itself only
    supplies the grid; the gaps are operator-level.
    """
    alphas = [float(a) for a in alphas]
    if len(alphas) < 2:
        raise ValueError("need at least two orders to scan")
    for a in alphas:
        if not (SCAN_ORDER_MIN <= a <= SCAN_ORDER_MAX):
            raise ValueError(
                f"scan orders must lie in [{SCAN_ORDER_MIN}, {SCAN_ORDER_MAX}],"
                f" got {a!r}"
            )
    grid = f_probe.grid
    mats = [rl_weights(a, grid).matrix for a in alphas]
    out = []
    for i in range(len(alphas) - 1):
        gap = operator_norm(TriangularOperator(mats[i + 1] - mats[i], grid), p)
        out.append((alphas[i], gap))
    return out
