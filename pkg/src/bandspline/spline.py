"""Variational quadratic spline on a uniform grid.

The interpolant is piecewise quadratic,

    P_k(x) = p_k(x) + a_k (x - x_{k-1})(x - x_k),    k = 1..n,

where p_k is the linear interpolant of the two piece endpoints.  First
derivative continuity fixes every a_k in terms of a_1 through a plain
two-term recurrence, and a_1 itself is chosen to minimise the integral of
(S - s)^2 against the segmentary linear interpolant s.  No algebraic system
is ever solved: all coefficients come from explicit recurrences, and the
whole map samples -> coefficients is the fixed matrix returned by
:func:`coefficient_matrix` (scaled by 1/h^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidInputError

__all__ = [
    "Grid",
    "SplineInterpolant",
    "compute_r",
    "variational_a1",
    "variational_a1_closed_form",
    "coefficient_matrix",
    "fit",
    "evaluate",
    "objective",
]

_UNIFORMITY_RTOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [a, b] into n pieces."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"piece count must be >= 1, got {self.n}")
        if not self.b > self.a:
            raise InvalidInputError(f"need b > a, got a={self.a}, b={self.b}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n + 1)

    @classmethod
    def from_nodes(cls, nodes) -> "Grid":
        """Build a Grid from explicit node positions, rejecting non-uniform
        spacing (the closed-form coefficients assume constant h)."""
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise InvalidInputError("need at least two nodes")
        steps = np.diff(nodes)
        if np.any(steps <= 0):
            raise InvalidInputError("nodes must be strictly increasing")
        h = (nodes[-1] - nodes[0]) / (nodes.size - 1)
        if np.max(np.abs(steps - h)) > _UNIFORMITY_RTOL * max(abs(h), 1.0):
            raise InvalidInputError("non-uniform grids are not supported")
        return cls(float(nodes[0]), float(nodes[-1]), nodes.size - 1)


def _check_samples(samples, grid: Grid) -> np.ndarray:
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size != grid.n + 1:
        raise InvalidInputError(
            f"expected {grid.n + 1} samples for n={grid.n}, got {samples.size}"
        )
    return samples


def compute_r(samples, grid: Grid) -> np.ndarray:
    """Residual coefficients r_1..r_n of the correction recurrence.

    r_1 = 0 and r_{k+1} = (y_{k+1} - 2 y_k + y_{k-1})/h^2 - r_k, so that the
    full corrections split as a_k = (-1)^(k+1) a_1 + r_k.
    """
    y = _check_samples(samples, grid)
    n, h = grid.n, grid.h
    r = np.zeros(n)
    d2 = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / h**2  # second differences, k=1..n-1
    for k in range(1, n):
        r[k] = d2[k - 1] - r[k - 1]
    return r


def variational_a1(samples, grid: Grid) -> float:
    """First correction coefficient minimising ∫(S - s)^2.

    Computed from the residuals: a_1 = (1/n) Σ_k (-1)^k r_k.
    """
    r = compute_r(samples, grid)
    signs = np.where(np.arange(1, grid.n + 1) % 2 == 0, 1.0, -1.0)
    return float(np.dot(signs, r) / grid.n)


def variational_a1_closed_form(samples, grid: Grid) -> float:
    """Closed form of :func:`variational_a1` as an explicit sample functional.

    a_1 = [(n-1) y_0 - (3n-4) y_1 + Σ_{j=2}^{n-1} 4 (-1)^j (n-j) y_j
           + (-1)^n y_n] / (n h^2)
    """
    y = _check_samples(samples, grid)
    n, h = grid.n, grid.h
    w = np.zeros(n + 1)
    w[0] = n - 1.0
    w[1] += -(3.0 * n - 4.0)
    for j in range(2, n):
        w[j] += 4.0 * (-1.0) ** j * (n - j)
    w[n] += (-1.0) ** n
    return float(np.dot(w, y) / (n * h**2))


def coefficient_matrix(n: int) -> np.ndarray:
    """The n x (n+1) matrix C with a_k = (1/h^2) (C @ Y)_k.

    C depends only on n.  The 1/h^2 prefactor lives outside the matrix so
    that C has the pure rational entries of the unit-spacing case.
    """
    if n < 1:
        raise InvalidInputError(f"piece count must be >= 1, got {n}")
    grid = Grid(0.0, float(n), n)  # h = 1
    cols = []
    for j in range(n + 1):
        y = np.zeros(n + 1)
        y[j] = 1.0
        r = compute_r(y, grid)
        a1 = variational_a1(y, grid)
        signs = np.where(np.arange(1, n + 1) % 2 == 1, 1.0, -1.0)
        cols.append(signs * a1 + r)
    return np.column_stack(cols)


@dataclass(frozen=True)
class SplineInterpolant:
    """Fitted spline: samples plus per-piece correction coefficients."""

    grid: Grid
    samples: np.ndarray
    a_coeffs: np.ndarray  # a_1..a_n
    r_coeffs: np.ndarray  # r_1..r_n

    def piece_index(self, x: float) -> int:
        """1-based index of the piece containing x.  A node x_k belongs to
        the piece ending at it (I_k), except x_0 which belongs to I_1."""
        g = self.grid
        span = g.b - g.a
        if x < g.a - 1e-12 * span or x > g.b + 1e-12 * span:
            raise DomainError(f"x={x} outside [{g.a}, {g.b}]")
        k = int(np.searchsorted(g.nodes, min(max(x, g.a), g.b), side="left"))
        return min(max(k, 1), g.n)

    def evaluate(self, x):
        """Value of the spline at x (scalar or array)."""
        return self._eval(x, deriv=False)

    def derivative(self, x):
        """First derivative of the spline at x (scalar or array)."""
        return self._eval(x, deriv=True)

    __call__ = evaluate

    def _eval(self, x, deriv: bool):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty_like(xs)
        g, y, a = self.grid, self.samples, self.a_coeffs
        h = g.h
        nodes = g.nodes
        for i, xi in enumerate(xs):
            k = self.piece_index(xi)
            xl, xr = nodes[k - 1], nodes[k]
            slope = (y[k] - y[k - 1]) / h
            if deriv:
                out[i] = slope + a[k - 1] * (2.0 * xi - xl - xr)
            else:
                out[i] = y[k - 1] + slope * (xi - xl) + a[k - 1] * (xi - xl) * (xi - xr)
        return out[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else out


def fit(samples, grid: Grid) -> SplineInterpolant:
    """Fit the variational quadratic spline to node samples."""
    y = _check_samples(samples, grid)
    r = compute_r(y, grid)
    a1 = variational_a1(y, grid)
    signs = np.where(np.arange(1, grid.n + 1) % 2 == 1, 1.0, -1.0)
    a = signs * a1 + r
    return SplineInterpolant(grid=grid, samples=y, a_coeffs=a, r_coeffs=r)


def evaluate(interpolant: SplineInterpolant, x):
    """Functional form of :meth:`SplineInterpolant.evaluate`."""
    return interpolant.evaluate(x)


def objective(interpolant: SplineInterpolant) -> float:
    """The minimised quantity ∫(S - s)^2 dx = (h^5/30) Σ a_k^2."""
    h = interpolant.grid.h
    return float(h**5 / 30.0 * np.sum(interpolant.a_coeffs**2))
