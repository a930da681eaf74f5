"""Piecewise propagation of y'' + (E - V(x)) y = 0 by truncated Taylor series.

On each piece the potential is a polynomial (the quadratic spline piece, or
an exact local Taylor expansion for the continuation comparator).  Two
fundamental solutions are generated about the left node by the coefficient
recurrence of y'' = (V - E) y, and their endpoint values assemble the 2x2
transfer matrix mapping (y, y') across the piece.  The product over one
period is the monodromy matrix used by the Floquet layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .potentials import PotentialSpec, local_taylor
from .spline import SplineInterpolant

__all__ = [
    "QuadraticPiece",
    "FundamentalPair",
    "fundamental_pair",
    "transfer_matrix",
    "spline_pieces",
    "propagate",
    "cac_transfer",
    "transfer_matrices_batch",
]


@dataclass(frozen=True)
class QuadraticPiece:
    """One spline piece in monomial form: P(x) = a x^2 + b x + c on
    [x_start, x_end]."""

    a: float
    b: float
    c: float
    x_start: float
    x_end: float

    def local_coeffs(self) -> np.ndarray:
        """Coefficients of P(x_start + t) in powers of t."""
        x0 = self.x_start
        return np.array(
            [
                self.a * x0**2 + self.b * x0 + self.c,
                2.0 * self.a * x0 + self.b,
                self.a,
            ]
        )

    def __call__(self, x):
        return self.a * x**2 + self.b * x + self.c


@dataclass(frozen=True)
class FundamentalPair:
    """Taylor coefficients (about the piece's left node) of the two
    fundamental solutions at energy E.

    coeffs1: (y, y') = (0, 1) at the left node.
    coeffs2: (y, y') = (1, 0) at the left node.
    """

    order: int
    coeffs1: np.ndarray
    coeffs2: np.ndarray
    energy: float


def _taylor_coeffs(vloc: np.ndarray, E: float, m: int, y0: float, dy0: float) -> np.ndarray:
    """Solution coefficients of y'' = (V - E) y with V(t) = sum vloc[i] t^i."""
    q = np.array(vloc, dtype=float)
    q[0] -= E
    alpha = np.zeros(m + 1)
    alpha[0] = y0
    if m >= 1:
        alpha[1] = dy0
    for j in range(m - 1):
        acc = 0.0
        for i in range(min(len(q) - 1, j) + 1):
            acc += q[i] * alpha[j - i]
        alpha[j + 2] = acc / ((j + 1) * (j + 2))
    return alpha


def fundamental_pair(piece: QuadraticPiece, E: float, m: int) -> FundamentalPair:
    """Both fundamental Taylor solutions of order m on a quadratic piece."""
    if m < 2:
        raise InvalidInputError(f"Taylor order must be >= 2, got {m}")
    vloc = piece.local_coeffs()
    return FundamentalPair(
        order=m,
        coeffs1=_taylor_coeffs(vloc, E, m, 0.0, 1.0),
        coeffs2=_taylor_coeffs(vloc, E, m, 1.0, 0.0),
        energy=E,
    )


def _series_and_derivative(coeffs: np.ndarray, t: float) -> tuple[float, float]:
    y = 0.0
    dy = 0.0
    for j in range(len(coeffs) - 1, 0, -1):
        y = y * t + coeffs[j]
        dy = dy * t + j * coeffs[j]
    y = y * t + coeffs[0]
    return y, dy


def transfer_matrix(pair: FundamentalPair, h: float) -> np.ndarray:
    """2x2 matrix mapping (y, y') at the left node to (y, y') at distance h."""
    y1, dy1 = _series_and_derivative(pair.coeffs1, h)
    y2, dy2 = _series_and_derivative(pair.coeffs2, h)
    return np.array([[y2, y1], [dy2, dy1]])


def spline_pieces(interpolant: SplineInterpolant) -> list[QuadraticPiece]:
    """Monomial-form pieces of a fitted spline."""
    g = interpolant.grid
    nodes = g.nodes
    h = g.h
    y = interpolant.samples
    pieces = []
    for k in range(1, g.n + 1):
        xl, xr = nodes[k - 1], nodes[k]
        slope = (y[k] - y[k - 1]) / h
        ak = interpolant.a_coeffs[k - 1]
        pieces.append(
            QuadraticPiece(
                a=ak,
                b=slope - ak * (xl + xr),
                c=y[k - 1] - slope * xl + ak * xl * xr,
                x_start=xl,
                x_end=xr,
            )
        )
    return pieces


def propagate(pieces, E: float, m: int, y0: float, dy0: float) -> np.ndarray:
    """Propagate (y0, dy0) across contiguous pieces.

    Returns an (n+1, 3) array of rows (x_k, y_k, y'_k), the first row being
    the initial data at the left end.
    """
    pieces = list(pieces)
    if not pieces:
        raise InvalidInputError("need at least one piece")
    for p, q in zip(pieces, pieces[1:]):
        scale = max(abs(p.x_end), abs(q.x_start), 1.0)
        if abs(p.x_end - q.x_start) > 1e-10 * scale:
            raise InvalidInputError(
                f"pieces are not contiguous at x={p.x_end} vs {q.x_start}"
            )
    out = np.empty((len(pieces) + 1, 3))
    out[0] = (pieces[0].x_start, y0, dy0)
    v = np.array([y0, dy0])
    for i, piece in enumerate(pieces):
        pair = fundamental_pair(piece, E, m)
        M = transfer_matrix(pair, piece.x_end - piece.x_start)
        v = M @ v
        out[i + 1] = (piece.x_end, v[0], v[1])
    return out


def cac_transfer(
    potential: PotentialSpec, x_start: float, h: float, E: float, order: int
) -> np.ndarray:
    """Transfer matrix over [x_start, x_start + h] from the exact potential.

    Same Taylor construction as :func:`fundamental_pair` /
    :func:`transfer_matrix`, but fed the exact potential's local expansion
    instead of a spline piece; this is the continuation comparator used as an
    accuracy reference.
    """
    if order < 2:
        raise InvalidInputError(f"Taylor order must be >= 2, got {order}")
    vloc = local_taylor(potential, x_start, max(order - 2, 0))
    c1 = _taylor_coeffs(vloc, E, order, 0.0, 1.0)
    c2 = _taylor_coeffs(vloc, E, order, 1.0, 0.0)
    y1, dy1 = _series_and_derivative(c1, h)
    y2, dy2 = _series_and_derivative(c2, h)
    return np.array([[y2, y1], [dy2, dy1]])


def transfer_matrices_batch(vloc: np.ndarray, E: float, m: int, h: float) -> np.ndarray:
    """Transfer matrices of all pieces at once.

    vloc has shape (n, p+1): row k holds the local potential coefficients of
    piece k about its left node.  Returns an (n, 2, 2) array.  This is the
    vectorised kernel behind the Floquet scans, where the recurrence runs for
    every piece simultaneously.
    """
    if m < 2:
        raise InvalidInputError(f"Taylor order must be >= 2, got {m}")
    q = np.array(vloc, dtype=float)
    if q.ndim != 2:
        raise InvalidInputError("vloc must be a 2-D array of piece coefficients")
    q[:, 0] -= E
    n, width = q.shape
    # alpha[s] has shape (n, m+1); s=0 is the (0,1) solution, s=1 is (1,0).
    alpha = np.zeros((2, n, m + 1))
    alpha[0, :, 1] = 1.0
    alpha[1, :, 0] = 1.0
    for j in range(m - 1):
        top = min(width - 1, j)
        acc = np.zeros((2, n))
        for i in range(top + 1):
            acc += q[:, i] * alpha[:, :, j - i]
        alpha[:, :, j + 2] = acc / ((j + 1) * (j + 2))
    powers = h ** np.arange(m + 1)
    vals = alpha @ powers
    dvals = alpha[:, :, 1:] @ (np.arange(1, m + 1) * h ** np.arange(m))
    out = np.empty((n, 2, 2))
    out[:, 0, 0] = vals[1]
    out[:, 0, 1] = vals[0]
    out[:, 1, 0] = dvals[1]
    out[:, 1, 1] = dvals[0]
    return out
