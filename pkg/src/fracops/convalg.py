"""Discrete convolution operators and the truncated Toeplitz algebra.

Kernels are coefficient sequences (c_0, ..., c_{n-1}) with a grid spacing;
their convolution matrices are lower-triangular Toeplitz, so the algebra
is closed under products and m-th roots can be enumerated exactly. The
discrete integration operator here is the right-point rectangle rule
(kernel of all ones), deliberately different from the product-trapezoid
scheme: rectangle convolution is exactly Toeplitz, which is what makes
the root recursion exact.

Sums that must be bit-identical under operand swaps (convolution
commutativity) use math.fsum, which returns the correctly rounded result
independent of summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discretization import (
    NormOrder,
    SampledFunction,
    TriangularOperator,
    operator_norm,
)
from .fracint import check_order


@dataclass(frozen=True)
class ToeplitzKernel:
    """Coefficients identifying an element of the convolution algebra."""

    coeffs: np.ndarray
    spacing: float

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size < 2:
            raise ValueError("kernel needs at least two coefficients")
        if not np.all(np.isfinite(c)):
            raise ValueError("kernel coefficients must be finite")
        if not (self.spacing > 0.0 and math.isfinite(self.spacing)):
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self) -> int:
        return self.coeffs.size


@dataclass(frozen=True)
class SupportProfile:
    """Lengths of the initial vanishing segments, in interval units."""

    lam: float
    mu: float


def integration_kernel(n: int, spacing: float) -> ToeplitzKernel:
    """All-ones kernel: the rectangle-rule discrete integration operator."""
    return ToeplitzKernel(np.ones(n), spacing)


def conv_operator(g: ToeplitzKernel) -> TriangularOperator:
    """Matrix with entries h * c_{i-j} below the diagonal."""
    n = len(g)
    idx = np.arange(n)
    m = g.spacing * np.where(
        idx[:, None] >= idx[None, :], g.coeffs[np.abs(idx[:, None] - idx[None, :])], 0.0
    )
    return TriangularOperator(m)


def convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """(f*g)_i = h * sum_{j<=i} f_j g_{i-j}; exact accumulation, so the
    result is bit-identical under swapping f and g."""
    f._require_same_grid(g)
    h = f.grid.spacing
    fv, gv = f.values, g.values
    out = np.empty_like(fv)
    for i in range(fv.size):
        out[i] = h * math.fsum(fv[: i + 1] * gv[i::-1])
    return SampledFunction(f.grid, out)


def _vanishing_length(values: np.ndarray, eps: float, spacing: float) -> float:
    """Length of the largest initial node run with |v| <= eps."""
    exceed = np.nonzero(np.abs(values) > eps)[0]
    run = int(exceed[0]) if exceed.size else values.size
    return max(run - 1, 0) * spacing


def titchmarsh_support(
    f: SampledFunction, g: SampledFunction, eps: float | None = None
) -> tuple[SupportProfile, float]:
    """Vanishing-segment lengths of f and g, and the support onset of f*g.

    The onset is reported as the end of the convolution's own vanishing
    initial segment (one cell before the first node exceeding eps), the
    same way the segment lengths of f and g are measured; it equals b when
    the convolution never exceeds eps. Support addition guarantees
    conv_start >= a + lam + mu - spacing.
    """
    f._require_same_grid(g)
    if eps is None:
        eps = 1e-12 * max(np.max(np.abs(f.values)), np.max(np.abs(g.values)))
    elif eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    h = f.grid.spacing
    lam = _vanishing_length(f.values, eps, h)
    mu = _vanishing_length(g.values, eps, h)
    conv = convolve(f, g)
    conv_start = f.grid.a + _vanishing_length(conv.values, eps, h)
    return SupportProfile(lam=lam, mu=mu), conv_start


def commutation_residual(
    a: TriangularOperator, g: ToeplitzKernel, p: NormOrder
) -> float:
    """Norm of A C - C A with C the convolution operator of g."""
    c = conv_operator(g)
    if a.dim != c.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {c.dim}")
    comm = a.matrix @ c.matrix - c.matrix @ a.matrix
    return operator_norm(TriangularOperator(comm), p)


def _require_compatible(x: ToeplitzKernel, y: ToeplitzKernel) -> None:
    if len(x) != len(y):
        raise ValueError(f"kernel length mismatch: {len(x)} vs {len(y)}")
    if x.spacing != y.spacing:
        raise ValueError(f"kernel spacing mismatch: {x.spacing} vs {y.spacing}")


def algebra_mul(x: ToeplitzKernel, y: ToeplitzKernel) -> ToeplitzKernel:
    """Truncated power-series product scaled by the spacing, so that
    conv_operator is an algebra homomorphism. Commutative bit-identically."""
    _require_compatible(x, y)
    n = len(x)
    xv, yv = x.coeffs, y.coeffs
    out = np.empty(n)
    for k in range(n):
        out[k] = x.spacing * math.fsum(xv[: k + 1] * yv[k::-1])
    return ToeplitzKernel(out, x.spacing)


def algebra_pow(x: ToeplitzKernel, m: int) -> ToeplitzKernel:
    """m-fold algebra product of x with itself (m >= 1)."""
    if m < 1:
        raise ValueError("power must be a positive integer")
    acc = x
    for _ in range(m - 1):
        acc = algebra_mul(acc, x)
    return acc


def toeplitz_roots(c: ToeplitzKernel, m: int) -> list[ToeplitzKernel]:
    """All real m-th roots of c in the algebra (c_0 > 0 required).

    In plain power-series terms the target is b = c / h^(m-1); the leading
    coefficient solves t_0^m = b_0 (one real root for odd m, a +/- pair
    for even m) and the remaining coefficients follow from the triangular
    recursion obtained by differentiating A^m = B:
        k a_0 b_k = sum_{j=1..k} ((m+1) j - k) a_j b_{k-j}.
    The negative-leading even root is exactly the negation of the positive
    one, so only one recursion is run.
    """
    if m < 1:
        raise ValueError("root order must be a positive integer")
    c0 = float(c.coeffs[0])
    if c0 <= 0.0:
        raise ValueError(f"leading coefficient must be positive, got {c0!r}")
    if m == 1:
        return [ToeplitzKernel(c.coeffs.copy(), c.spacing)]

    n = len(c)
    h = c.spacing
    b = c.coeffs / h ** (m - 1)
    a = np.zeros(n)
    a[0] = b[0] ** (1.0 / m)
    for k in range(1, n):
        j = np.arange(1, k)
        s = float(np.dot(((m + 1) * j - k) * a[1:k], b[k - 1 : 0 : -1]))
        a[k] = (k * a[0] * b[k] - s) / (m * k * b[0])

    roots = [ToeplitzKernel(a, h)]
    if m % 2 == 0:
        roots.append(ToeplitzKernel(-a, h))
    return roots


def gl_weights(alpha: float, n: int, h: float) -> ToeplitzKernel:
    """Backward-difference convolution-quadrature kernel for order alpha.

    Coefficients are those of (1 - z)^(-alpha) scaled by h^(alpha-1), via
    the stable recurrence c_j = c_{j-1} (j - 1 + alpha) / j.
    """
    alpha = check_order(alpha)
    if n < 2:
        raise ValueError("need at least two coefficients")
    if h <= 0.0:
        raise ValueError(f"spacing must be positive, got {h!r}")
    j = np.arange(1, n)
    factors = (j - 1.0 + alpha) / j
    coeffs = h ** (alpha - 1.0) * np.concatenate(([1.0], np.cumprod(factors)))
    return ToeplitzKernel(coeffs, h)


@dataclass(frozen=True)
class CmRootReport:
    """Outcome of the m-th-root uniqueness experiment on the integration
    kernel: the real root list, which of them are squares of real algebra
    elements, and how close the positive root is to the order-1/m
    convolution-quadrature kernel."""

    m: int
    n: int
    spacing: float
    roots: list[ToeplitzKernel]
    square_leading_coeffs: list[float]
    is_square: list[bool]
    recompose_errors: list[float]
    match_error: float

    @property
    def root_count(self) -> int:
        return len(self.roots)


def cm_root_experiment(n: int, h: float, m: int) -> CmRootReport:
    """Enumerate real m-th roots of the discrete integration operator.

    For even m there are exactly two roots (negatives of each other) and
    only the positive one is itself a square in the real algebra, which is
    what rules the negative sign out of any index-law-consistent family;
    for odd m the root is unique. The surviving root coincides with the
    order-1/m convolution-quadrature kernel.
    """
    if m < 2:
        raise ValueError("experiment needs m >= 2")
    base = integration_kernel(n, h)
    roots = toeplitz_roots(base, m)

    square_leads = [float(algebra_mul(r, r).coeffs[0]) for r in roots]
    is_square = []
    for r in roots:
        try:
            toeplitz_roots(r, 2)
            is_square.append(True)
        except ValueError:
            is_square.append(False)
    recompose = [
        float(np.max(np.abs(algebra_pow(r, m).coeffs - base.coeffs))) for r in roots
    ]

    reference = gl_weights(1.0 / m, n, h)
    positive = max(roots, key=lambda r: r.coeffs[0])
    match_error = float(np.max(np.abs(positive.coeffs - reference.coeffs)))

    return CmRootReport(
        m=m,
        n=n,
        spacing=h,
        roots=roots,
        square_leading_coeffs=square_leads,
        is_square=is_square,
        recompose_errors=recompose,
        match_error=match_error,
    )
