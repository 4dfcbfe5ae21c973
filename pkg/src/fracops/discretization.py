"""Uniform grids, sampled functions, and discrete norms.

This module is the finite model of the function space the operators act
on: a function is one real value per grid node, interpolation between
nodes is piecewise linear, and the p-norms (p in {1, 2, inf}) are
trapezoid quadratures of the node values. Operators are dense lower
triangular matrices; their induced norms are the matching matrix norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

NormOrder = Union[int, float]

VALID_NORMS = (1, 2, math.inf)

# Relative slack when deciding whether an evaluation point is inside [a, b].
_DOMAIN_TOL = 1e-12

# Power iteration controls for the induced 2-norm.
_POWER_ITER_MAX = 10_000
_POWER_ITER_RTOL = 1e-10


def check_norm_order(p: NormOrder) -> float:
    if p == 1 or p == 2:
        return float(p)
    if p == math.inf:
        return math.inf
    raise ValueError(f"norm order must be 1, 2 or inf, got {p!r}")


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [a, b] into n cells (n + 1 nodes)."""

    a: float
    b: float
    n: int
    spacing: float = field(init=False)
    nodes: np.ndarray = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("grid endpoints must be finite")
        if self.a >= self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if self.n < 2:
            raise ValueError(f"need at least 2 cells, got n={self.n}")
        object.__setattr__(self, "spacing", (self.b - self.a) / self.n)
        nodes = np.linspace(self.a, self.b, self.n + 1)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def node_count(self) -> int:
        return self.n + 1

    def matches(self, other: "Grid") -> bool:
        return self.a == other.a and self.b == other.b and self.n == other.n


def build_grid(a: float, b: float, n: int) -> Grid:
    """Grid with exact endpoints; interior nodes are a + k*(b-a)/n."""
    return Grid(a, b, n)


@dataclass(frozen=True)
class SampledFunction:
    """One real value per grid node; piecewise linear in between."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.node_count,):
            raise ValueError(
                f"expected {self.grid.node_count} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled values must all be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid, fn: Callable[[float], float]) -> "SampledFunction":
        return cls(grid, np.array([fn(t) for t in grid.nodes], dtype=float))

    def _require_same_grid(self, other: "SampledFunction") -> None:
        if not self.grid.matches(other.grid):
            raise ValueError("sampled functions live on different grids")

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        self._require_same_grid(other)
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        self._require_same_grid(other)
        return SampledFunction(self.grid, self.values - other.values)

    def scaled(self, c: float) -> "SampledFunction":
        return SampledFunction(self.grid, c * self.values)


def evaluate(f: SampledFunction, t: float) -> float:
    """Piecewise-linear interpolation; exact at the nodes."""
    g = f.grid
    slack = _DOMAIN_TOL * (g.b - g.a)
    if t < g.a - slack or t > g.b + slack:
        raise ValueError(f"t={t} outside [{g.a}, {g.b}]")
    t = min(max(t, g.a), g.b)
    return float(np.interp(t, g.nodes, f.values))


def evaluate_many(f: SampledFunction, ts: np.ndarray) -> np.ndarray:
    """Vector form of evaluate with the same domain policy."""
    g = f.grid
    ts = np.asarray(ts, dtype=float)
    slack = _DOMAIN_TOL * (g.b - g.a)
    if np.any(ts < g.a - slack) or np.any(ts > g.b + slack):
        raise ValueError("evaluation points fall outside the grid interval")
    return np.interp(np.clip(ts, g.a, g.b), g.nodes, f.values)


def _trapezoid(values: np.ndarray, h: float) -> float:
    return h * (float(np.sum(values)) - 0.5 * (float(values[0]) + float(values[-1])))


def lp_norm(f: SampledFunction, p: NormOrder) -> float:
    """Discrete L^p norm: trapezoid quadrature for p=1,2, max for p=inf."""
    p = check_norm_order(p)
    v = f.values
    if p == math.inf:
        return float(np.max(np.abs(v)))
    h = f.grid.spacing
    if p == 1.0:
        return _trapezoid(np.abs(v), h)
    return math.sqrt(_trapezoid(v * v, h))


@dataclass(frozen=True)
class TriangularOperator:
    """Dense lower-triangular matrix acting on node-value vectors.

    ``grid`` records which partition the operator discretizes; pure
    algebra operators (convolution matrices) may leave it unset.
    """

    matrix: np.ndarray
    grid: Optional[Grid] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m = np.tril(m)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.grid is not None and self.grid.node_count != m.shape[0]:
            raise ValueError("grid node count does not match operator dimension")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, values: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(values, dtype=float)

    def compose(self, other: "TriangularOperator") -> "TriangularOperator":
        if self.dim != other.dim:
            raise ValueError("operator dimensions differ")
        return TriangularOperator(self.matrix @ other.matrix, self.grid)


def operator_norm(op: TriangularOperator, p: NormOrder) -> float:
    """Induced matrix norm: max column sum (p=1), max row sum (p=inf),
    largest singular value by power iteration on A^T A (p=2)."""
    p = check_norm_order(p)
    m = op.matrix
    if p == 1.0:
        return float(np.max(np.sum(np.abs(m), axis=0)))
    if p == math.inf:
        return float(np.max(np.sum(np.abs(m), axis=1)))
    return _spectral_norm_power_iteration(m)


def _spectral_norm_power_iteration(m: np.ndarray) -> float:
    # Deterministic all-ones start; iterate v <- A^T A v until the Rayleigh
    # quotient of A^T A is stable to _POWER_ITER_RTOL.
    v = np.ones(m.shape[0])
    v /= math.sqrt(m.shape[0])
    lam = 0.0
    for _ in range(_POWER_ITER_MAX):
        w = m.T @ (m @ v)
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return 0.0
        lam_new = float(v @ w)
        v = w / norm_w
        if abs(lam_new - lam) <= _POWER_ITER_RTOL * abs(lam_new):
            lam = lam_new
            break
        lam = lam_new
    return math.sqrt(max(lam, 0.0))
