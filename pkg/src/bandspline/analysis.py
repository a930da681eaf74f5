"""Error metrics, reference eigenvalues and trigonometric eigenfunction fits.

Contains the mean-square interpolation error, the relative-percent and
discrete l2 error metrics used in the validation tables, the truncated power
series for the low Mathieu characteristic values, least-squares Fourier
interpolation of discrete eigenfunctions, and the global-Lagrange error used
to demonstrate the Runge paradox.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import BarycentricInterpolator

from .errors import InvalidInputError

__all__ = [
    "FourierFit",
    "mean_square_interp_error",
    "relative_percent_error",
    "discrete_l2_error",
    "mathieu_reference",
    "fourier_fit",
    "lagrange_global_error",
]


def mean_square_interp_error(approx, reference, interval, num_points: int = 4001) -> float:
    """Mean-square error (1/(b-a)) * int_a^b (Q - y)^2 dx by composite Simpson."""
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise InvalidInputError(f"empty interval ({a}, {b})")
    if num_points % 2 == 0:
        num_points += 1
    xs = np.linspace(a, b, num_points)
    diff = np.array([approx(x) - reference(x) for x in xs], dtype=float)
    return float(simpson(diff**2, x=xs) / (b - a))


def relative_percent_error(exact: float, approx: float) -> float:
    """|exact - approx| / |exact| * 100."""
    if exact == 0:
        raise InvalidInputError("relative error is undefined for exact = 0")
    return abs(exact - approx) / abs(exact) * 100.0


def discrete_l2_error(samples, reference_values) -> float:
    """Sum of squared node differences, sum_k (y_k - y_ref_k)^2."""
    y = np.asarray(samples, dtype=float)
    ref = np.asarray(reference_values, dtype=float)
    if y.shape != ref.shape:
        raise InvalidInputError(f"length mismatch: {y.shape} vs {ref.shape}")
    return float(np.sum((y - ref) ** 2))


# Truncated series for the first Mathieu characteristic values, |q| < 1.
_MATHIEU_SERIES = {
    (1, "even"): lambda q: 1.0 + q - q**2 / 8 - q**3 / 64 - q**4 / 1536,
    (1, "odd"): lambda q: 1.0 - q - q**2 / 8 + q**3 / 64 - q**4 / 1536,
    (2, "even"): lambda q: 4.0 + 5 * q**2 / 12 - 763 * q**4 / 13824
    + 1002401 * q**6 / 79626240,
    (2, "odd"): lambda q: 4.0 - q**2 / 12 + 5 * q**4 / 13824 - 289 * q**6 / 79626240,
    (3, "even"): lambda q: 9.0 + q**2 / 16 + q**3 / 64 + 13 * q**4 / 20480
    - 5 * q**5 / 16384,
    (3, "odd"): lambda q: 9.0 + q**2 / 16 - q**3 / 64 + 13 * q**4 / 20480
    + 5 * q**5 / 16384,
}


def mathieu_reference(q: float, k: int, parity: str) -> float:
    """Series value of the k-th even/odd characteristic value of
    y'' + (r - 2q cos 2x) y = 0, valid for |q| < 1."""
    if not abs(q) < 1:
        raise InvalidInputError(f"series references require |q| < 1, got q={q}")
    try:
        series = _MATHIEU_SERIES[(k, parity)]
    except KeyError:
        raise InvalidInputError(f"unsupported characteristic value (k={k}, {parity!r})")
    return float(series(q))


@dataclass(frozen=True)
class FourierFit:
    """Least-squares trigonometric fit over one period.

    The phase origin is the first sample abscissa x0: harmonics are
    cos(2*pi*j*(x - x0)/T) and sin(2*pi*j*(x - x0)/T).
    """

    period: float
    origin: float
    constant: float
    cosine_coeffs: np.ndarray  # harmonics 1..H
    sine_coeffs: np.ndarray
    residual: float  # discrete l2 error of the fit at the sample nodes

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        phase = 2.0 * math.pi * (x - self.origin) / self.period
        out = np.full_like(x, self.constant, dtype=float)
        for j, (c, s) in enumerate(zip(self.cosine_coeffs, self.sine_coeffs), start=1):
            out = out + c * np.cos(j * phase) + s * np.sin(j * phase)
        return float(out) if out.ndim == 0 else out

    __call__ = evaluate


def fourier_fit(samples, period: float, n_harmonics: int) -> FourierFit:
    """Fit constant + sum_j (c_j cos + s_j sin) to (x, y) samples over one
    period by least squares."""
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise InvalidInputError("samples must be (x, y) pairs")
    if n_harmonics < 0 or 2 * n_harmonics > pts.shape[0]:
        raise InvalidInputError(
            f"{n_harmonics} harmonics need at least {2 * n_harmonics} samples, "
            f"got {pts.shape[0]}"
        )
    x, y = pts[:, 0], pts[:, 1]
    origin = float(x[0])
    phase = 2.0 * math.pi * (x - origin) / period
    cols = [np.ones_like(x)]
    for j in range(1, n_harmonics + 1):
        cols.append(np.cos(j * phase))
        cols.append(np.sin(j * phase))
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    fit = FourierFit(
        period=float(period),
        origin=origin,
        constant=float(coef[0]),
        cosine_coeffs=coef[1::2].copy(),
        sine_coeffs=coef[2::2].copy(),
        residual=0.0,
    )
    residual = discrete_l2_error(fit.evaluate(x), y)
    return FourierFit(
        period=fit.period,
        origin=fit.origin,
        constant=fit.constant,
        cosine_coeffs=fit.cosine_coeffs,
        sine_coeffs=fit.sine_coeffs,
        residual=residual,
    )


def lagrange_global_error(target, interval, n: int, num_points: int = 4001) -> float:
    """Mean-square error of the single degree-n polynomial through n+1
    equidistant nodes: the global interpolation that splines replace."""
    if n < 2:
        raise InvalidInputError(f"need n >= 2, got {n}")
    a, b = float(interval[0]), float(interval[1])
    xs = np.linspace(a, b, n + 1)
    ys = np.array([target(x) for x in xs], dtype=float)
    poly = BarycentricInterpolator(xs, ys)
    return mean_square_interp_error(
        lambda x: float(poly(x)), target, (a, b), num_points=num_points
    )
