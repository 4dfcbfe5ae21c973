"""Fractional integrals with respect to a smooth increasing integrator h.

Two routes to the same operator are implemented. The direct route builds
product-trapezoid weights in the image variable u = h(s), where the kernel
(h(t) - h(s))^(alpha-1) h'(s) ds becomes the plain power kernel du. The
conjugated route transports the uniform-grid operator through the
substitution maps f -> f o h and its inverse. Their disagreement is pure
discretization error and shrinks under refinement; measuring it is the
point of ``conjugation_residual``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .discretization import (
    Grid,
    NormOrder,
    SampledFunction,
    TriangularOperator,
    build_grid,
    evaluate,
    evaluate_many,
    lp_norm,
)
from .fracint import product_trapezoid_weights, rl_integrate

_DOMAIN_TOL = 1e-12
_INVERT_TOL = 1e-13
_BISECT_MAX_ITER = 80

# Sampled minimum of h' is scaled down by this factor because the true
# continuum minimum is not available from point evaluations.
_MIN_SLOPE_SAFETY = 0.999

_REFINE_FACTOR = 10

NORM_BOUND_SLACK = 1e-8


@dataclass(frozen=True)
class Integrator:
    """Evaluation oracle for a strictly increasing C^1 integrator.

    ``min_slope`` is the sampled minimum of h' over a 10x refinement of
    the working grid, times a 0.999 safety factor.
    """

    name: str
    fn: Callable[[float], float]
    deriv: Callable[[float], float]
    domain: tuple[float, float]
    min_slope: float

    @classmethod
    def build(
        cls,
        name: str,
        fn: Callable[[float], float],
        deriv: Callable[[float], float],
        grid: Grid,
    ) -> "Integrator":
        fine = build_grid(grid.a, grid.b, _REFINE_FACTOR * grid.n)
        slopes = np.array([deriv(t) for t in fine.nodes])
        if not np.all(np.isfinite(slopes)) or np.any(slopes <= 0.0):
            raise ValueError(
                f"integrator {name!r} must have h' > 0 on [{grid.a}, {grid.b}]"
            )
        values = np.array([fn(t) for t in fine.nodes])
        if np.any(np.diff(values) <= 0.0):
            raise ValueError(f"integrator {name!r} must be strictly increasing")
        return cls(
            name=name,
            fn=fn,
            deriv=deriv,
            domain=(grid.a, grid.b),
            min_slope=_MIN_SLOPE_SAFETY * float(np.min(slopes)),
        )

    @property
    def image(self) -> tuple[float, float]:
        return (self.fn(self.domain[0]), self.fn(self.domain[1]))


def _check_interval(lo: float, hi: float, want_lo: float, want_hi: float) -> None:
    slack = _DOMAIN_TOL * max(want_hi - want_lo, 1.0)
    if abs(lo - want_lo) > slack or abs(hi - want_hi) > slack:
        raise ValueError(
            f"grid interval [{lo}, {hi}] does not match expected"
            f" [{want_lo}, {want_hi}]"
        )


def substitute(f: SampledFunction, h: Integrator, target: Grid) -> SampledFunction:
    """Discrete f o h: resample f (living on [h(a), h(b)]) onto [a, b]."""
    ha, hb = h.image
    _check_interval(f.grid.a, f.grid.b, ha, hb)
    _check_interval(target.a, target.b, h.domain[0], h.domain[1])
    u = np.array([h.fn(t) for t in target.nodes])
    return SampledFunction(target, evaluate_many(f, u))


def invert(h: Integrator, u: float) -> float:
    """Solve h(t) = u by bisection; h is strictly increasing."""
    a, b = h.domain
    ha, hb = h.image
    span = hb - ha
    if u < ha - _DOMAIN_TOL * span or u > hb + _DOMAIN_TOL * span:
        raise ValueError(f"u={u} outside integrator range [{ha}, {hb}]")
    if abs(u - ha) <= _INVERT_TOL * span:
        return a
    if abs(u - hb) <= _INVERT_TOL * span:
        return b
    lo, hi = a, b
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        hm = h.fn(mid)
        if hm == u:
            return mid
        if hm < u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def substitute_inverse(
    f: SampledFunction, h: Integrator, target: Grid
) -> SampledFunction:
    """Discrete f o h^{-1}: resample f (living on [a, b]) onto [h(a), h(b)]."""
    ha, hb = h.image
    _check_interval(f.grid.a, f.grid.b, h.domain[0], h.domain[1])
    _check_interval(target.a, target.b, ha, hb)
    ts = np.array([invert(h, u) for u in target.nodes])
    return SampledFunction(target, evaluate_many(f, ts))


def stieltjes_weights(alpha: float, h: Integrator, grid: Grid) -> TriangularOperator:
    """Weights for the order-``alpha`` integral with respect to h.

    Built by the change of variable u = h(s): product-trapezoid weights on
    the (non-uniform) image nodes u_k = h(t_k), applied directly to values
    of f. The h' factor is absorbed by the substitution.
    """
    _check_interval(grid.a, grid.b, h.domain[0], h.domain[1])
    u = np.array([h.fn(t) for t in grid.nodes])
    if np.any(np.diff(u) <= 0.0):
        raise ValueError("integrator is not increasing on the grid nodes")
    return TriangularOperator(product_trapezoid_weights(alpha, u), grid)


def stieltjes_integrate(
    f: SampledFunction, alpha: float, h: Integrator
) -> SampledFunction:
    """Direct-quadrature route; result on f's grid, result[0] = 0."""
    op = stieltjes_weights(alpha, h, f.grid)
    return SampledFunction(f.grid, op.apply(f.values))


def conjugated_integrate(
    f: SampledFunction, alpha: float, h: Integrator, image_n: int
) -> SampledFunction:
    """Conjugation route: substitute, integrate on a uniform image grid,
    substitute back. ``image_n`` is the image grid's cell count."""
    if image_n < f.grid.n:
        raise ValueError("image grid must be at least as fine as f's grid")
    ha, hb = h.image
    image_grid = build_grid(ha, hb, image_n)
    pulled = substitute_inverse(f, h, image_grid)
    integrated = rl_integrate(pulled, alpha)
    return substitute(integrated, h, f.grid)


def conjugation_residual(
    f: SampledFunction, alpha: float, h: Integrator, p: NormOrder
) -> float:
    """Norm gap between the direct and conjugated discretizations."""
    direct = stieltjes_integrate(f, alpha, h)
    conjugated = conjugated_integrate(f, alpha, h, f.grid.n)
    return lp_norm(direct - conjugated, p)


class NormBoundCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def rh_norm_bound_check(f: SampledFunction, h: Integrator) -> NormBoundCheck:
    """Check ||f o h||_1 <= (1/m) ||f||_1 with m the minimum slope of h.

    f lives on the image interval [h(a), h(b)]; the left side is measured
    after resampling onto a working grid on [a, b] with the same cell
    count. The 1e-8 slack absorbs quadrature error on both sides.
    """
    target = build_grid(h.domain[0], h.domain[1], f.grid.n)
    lhs = lp_norm(substitute(f, h, target), 1)
    rhs = lp_norm(f, 1) / h.min_slope
    return NormBoundCheck(lhs, rhs, lhs <= rhs + NORM_BOUND_SLACK)


# Built-in integrators, selectable by name (parameters after a colon).

def _make_identity(grid: Grid) -> Integrator:
    return Integrator.build("id", lambda t: t, lambda t: 1.0, grid)


def _make_affine(grid: Grid, c0: float, c1: float) -> Integrator:
    if c1 <= 0.0:
        raise ValueError("affine integrator needs a positive slope")
    return Integrator.build(
        f"affine:{c0:g},{c1:g}", lambda t: c0 + c1 * t, lambda t: c1, grid
    )


def _make_exp(grid: Grid) -> Integrator:
    return Integrator.build("exp", math.exp, math.exp, grid)


def _make_square(grid: Grid) -> Integrator:
    return Integrator.build("square", lambda t: t * t, lambda t: 2.0 * t, grid)


def _make_log1p(grid: Grid) -> Integrator:
    return Integrator.build("log1p", math.log1p, lambda t: 1.0 / (1.0 + t), grid)


def _make_sinh(grid: Grid) -> Integrator:
    return Integrator.build("sinh", math.sinh, math.cosh, grid)


INTEGRATOR_NAMES = ("id", "affine", "exp", "square", "log1p", "sinh")


def make_integrator(selector: str, grid: Grid) -> Integrator:
    """Build a named integrator, e.g. "exp" or "affine:2,3", on a grid."""
    name, _, arg_text = selector.partition(":")
    args = [float(x) for x in arg_text.split(",")] if arg_text else []
    if name == "id":
        return _make_identity(grid)
    if name == "affine":
        if len(args) != 2:
            raise ValueError("affine integrator needs two parameters: c0,c1")
        return _make_affine(grid, args[0], args[1])
    if name == "exp":
        return _make_exp(grid)
    if name == "square":
        return _make_square(grid)
    if name == "log1p":
        return _make_log1p(grid)
    if name == "sinh":
        return _make_sinh(grid)
    raise ValueError(
        f"unknown integrator {name!r}; valid names: {', '.join(INTEGRATOR_NAMES)}"
    )
