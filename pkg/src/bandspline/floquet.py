"""Floquet boundary conditions: monodromy, discriminant, eigenvalues, bands.

A solution of the periodic problem satisfies y(b) = e^{lam*T} y(a) and the
same for y', with T = b - a.  The monodromy matrix M(E) (product of the
per-piece transfer matrices over one period) has trace Delta(E), and an
exponent lam = i*alpha admits a solution exactly when

    Delta(E) = 2 cos(alpha * T).

Energies with |Delta| <= 2 carry bounded (band) solutions; |Delta| > 2
regions are spectral gaps.  Eigenvalues for a fixed exponent are located by
scanning Delta, bracketing sign changes and refining by bisection; tangential
(degenerate) roots are picked up by refining interior extrema of the scan.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidInputError, NoEigenfunctionError
from .potentials import PotentialSpec, local_taylor, sample
from .propagator import spline_pieces, transfer_matrices_batch
from .spline import Grid, fit

__all__ = [
    "FloquetProblem",
    "BandStructure",
    "EigenSolution",
    "monodromy",
    "discriminant",
    "find_eigenvalues",
    "band_structure",
    "eigenfunction",
    "classify_parity",
]


@dataclass
class FloquetProblem:
    """One-period eigenvalue problem with a chosen propagation backend.

    mode "spline" propagates through the fitted quadratic spline of the
    sampled potential (Taylor order ``m``); mode "cac" propagates through the
    exact potential's local Taylor expansions (solution order ``cac_order``),
    the continuation comparator.
    """

    potential: PotentialSpec
    grid: Grid
    m: int = 5
    mode: str = "spline"
    cac_order: int | None = None
    _vloc: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in ("spline", "cac"):
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        if self.mode == "cac" and self.cac_order is None:
            raise InvalidInputError("cac mode requires cac_order")
        if self.solution_order < 2:
            raise InvalidInputError("Taylor order must be >= 2")

    @property
    def solution_order(self) -> int:
        return self.m if self.mode == "spline" else self.cac_order

    @property
    def period(self) -> float:
        return self.grid.b - self.grid.a

    def local_potential_coeffs(self) -> np.ndarray:
        """(n, p+1) array: local potential coefficients of every piece about
        its left node.  Computed once and cached."""
        if self._vloc is None:
            if self.mode == "spline":
                values = sample(self.potential, self.grid)
                pieces = spline_pieces(fit(values, self.grid))
                self._vloc = np.array([p.local_coeffs() for p in pieces])
            else:
                order = max(self.cac_order - 2, 0)
                lefts = self.grid.nodes[:-1]
                self._vloc = np.array(
                    [local_taylor(self.potential, x, order) for x in lefts]
                )
        return self._vloc


def _period_matrices(problem: FloquetProblem, E: float, order: int | None = None) -> np.ndarray:
    """Per-piece transfer matrices, projected back onto unit determinant.

    The exact flow of y'' + (E - V) y = 0 preserves the Wronskian; Taylor
    truncation breaks that by O(h^{m+1}) per piece, and the accumulated
    determinant drift turns out to dominate the eigenvalue error near band
    edges.  Dividing each matrix by the square root of its determinant
    removes the spurious non-area-preserving part while leaving the phase
    error untouched.
    """
    mats = transfer_matrices_batch(
        problem.local_potential_coeffs(),
        E,
        order if order is not None else problem.solution_order,
        problem.grid.h,
    )
    dets = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    good = dets > 0.0
    mats[good] /= np.sqrt(dets[good])[:, None, None]
    return mats


def monodromy(problem: FloquetProblem, E: float, order: int | None = None) -> np.ndarray:
    """M(E) = M_n ... M_1, the map of (y, y') across one full period."""
    mats = _period_matrices(problem, E, order)
    M = np.eye(2)
    for k in range(mats.shape[0]):
        M = mats[k] @ M
    return M


def discriminant(problem: FloquetProblem, E: float) -> float:
    """Delta(E), the trace of the monodromy matrix."""
    M = monodromy(problem, E)
    return float(M[0, 0] + M[1, 1])


def _bisect(f, lo, hi, flo, fhi, xtol=1e-10):
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (flo < 0.0) != (fm < 0.0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _scan_grid(lo, hi, step):
    count = max(int(math.ceil((hi - lo) / step)) + 1, 2)
    return np.linspace(lo, hi, count)


def _check_exponent(lam) -> complex:
    lam = complex(lam)
    if abs(lam.real) > 1e-12:
        raise InvalidInputError(
            f"only purely imaginary Floquet exponents admit bounded solutions, "
            f"got Re lam = {lam.real}"
        )
    return lam


def find_eigenvalues(
    problem: FloquetProblem,
    lam,
    E_range,
    scan_step: float = 0.05,
    degenerate_tol: float = 1e-8,
    merge_tol: float = 1e-8,
) -> list[float]:
    """All E in the range with Delta(E) = 2 cos(alpha T), lam = i alpha.

    Sign changes of the scanned residual are refined by bisection to 1e-10;
    tangential extrema (band-touching double roots) are refined by bounded
    minimisation and accepted when the residual drops below
    ``degenerate_tol``.  Roots closer than ``merge_tol`` are merged.
    """
    lam = _check_exponent(lam)
    T = problem.period
    target = 2.0 * math.cos(lam.imag * T)
    lo, hi = float(E_range[0]), float(E_range[1])
    if hi <= lo:
        return []

    def f(E):
        return discriminant(problem, E) - target

    Es = _scan_grid(lo, hi, scan_step)
    fv = np.array([f(E) for E in Es])

    roots: list[float] = []
    for i in range(len(Es) - 1):
        if fv[i] == 0.0:
            roots.append(float(Es[i]))
        elif (fv[i] < 0.0) != (fv[i + 1] < 0.0):
            roots.append(_bisect(f, Es[i], Es[i + 1], fv[i], fv[i + 1]))
    if fv[-1] == 0.0:
        roots.append(float(Es[-1]))

    # Tangential (double) roots: interior extrema of the scan that approach
    # zero without a sign change on the scan grid.
    for i in range(1, len(Es) - 1):
        same_sign = (fv[i - 1] < 0.0) == (fv[i] < 0.0) == (fv[i + 1] < 0.0)
        if not same_sign or fv[i] == 0.0:
            continue
        if not (abs(fv[i]) < abs(fv[i - 1]) and abs(fv[i]) <= abs(fv[i + 1])):
            continue
        s = 1.0 if fv[i] > 0.0 else -1.0
        res = minimize_scalar(
            lambda E: s * f(E),
            bounds=(Es[i - 1], Es[i + 1]),
            method="bounded",
            options={"xatol": 1e-10},
        )
        Emin = float(res.x)
        fmin = s * float(res.fun)
        if (fmin < 0.0) != (fv[i] < 0.0):
            # The dip crosses zero between the scan points: two simple roots.
            roots.append(_bisect(f, Es[i - 1], Emin, fv[i - 1], fmin))
            roots.append(_bisect(f, Emin, Es[i + 1], fmin, fv[i + 1]))
        else:
            # Accept a touching extremum when its residual is within the
            # solver's own truncation noise, estimated by re-evaluating the
            # discriminant at a higher Taylor order.
            M_hi = monodromy(problem, Emin, order=problem.solution_order + 4)
            noise = abs((fmin + target) - (M_hi[0, 0] + M_hi[1, 1]))
            if abs(fmin) <= max(degenerate_tol, 4.0 * noise):
                roots.append(Emin)

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] < merge_tol:
            continue
        merged.append(r)
    return merged


@dataclass(frozen=True)
class BandStructure:
    """Allowed bands, the gaps between them, and dispersion samples.

    ``dispersion`` rows are (E, alpha) with cos(alpha T) = Delta(E)/2 and
    alpha in [0, pi/T].
    """

    bands: list[tuple[float, float]]
    gaps: list[tuple[float, float]]
    dispersion: np.ndarray


def band_structure(
    problem: FloquetProblem,
    E_range,
    scan_step: float = 0.05,
    dispersion_samples: int = 16,
) -> BandStructure:
    """Locate the allowed-energy intervals {E : |Delta(E)| <= 2} in a range.

    Band edges (|Delta| = 2) are refined by bisection; gaps are the intervals
    between consecutive detected bands.  Dispersion points are sampled
    inside each band.
    """
    lo, hi = float(E_range[0]), float(E_range[1])
    if hi <= lo:
        raise InvalidInputError(f"empty energy range ({lo}, {hi})")
    T = problem.period

    Es = _scan_grid(lo, hi, scan_step)
    deltas = np.array([discriminant(problem, E) for E in Es])
    inside = np.abs(deltas) <= 2.0

    def edge(i):
        # refine the |Delta| = 2 crossing between Es[i] and Es[i+1]
        out_val = deltas[i] if not inside[i] else deltas[i + 1]
        shift = -2.0 if out_val > 2.0 else 2.0

        def g(E):
            return discriminant(problem, E) + shift

        return _bisect(g, Es[i], Es[i + 1], deltas[i] + shift, deltas[i + 1] + shift)

    bands: list[tuple[float, float]] = []
    start = Es[0] if inside[0] else None
    for i in range(len(Es) - 1):
        if inside[i] == inside[i + 1]:
            continue
        x = edge(i)
        if inside[i]:
            bands.append((float(start), float(x)))
            start = None
        else:
            start = x
    if start is not None:
        bands.append((float(start), float(Es[-1])))

    gaps = [
        (bands[i][1], bands[i + 1][0])
        for i in range(len(bands) - 1)
        if bands[i + 1][0] > bands[i][1]
    ]

    disp = []
    for b_lo, b_hi in bands:
        if b_hi <= b_lo:
            continue
        for E in np.linspace(b_lo, b_hi, dispersion_samples + 2)[1:-1]:
            d = discriminant(problem, E)
            alpha = math.acos(min(max(d / 2.0, -1.0), 1.0)) / T
            disp.append((float(E), alpha))
    dispersion = np.array(disp).reshape(-1, 2)
    return BandStructure(bands=bands, gaps=gaps, dispersion=dispersion)


@dataclass(frozen=True)
class EigenSolution:
    """Discrete eigenfunction: node values plus bookkeeping."""

    energy: float
    lam: complex
    node_values: np.ndarray  # rows (x_k, y_k, y'_k)
    parity: str  # "even" | "odd" | "none"
    residual: float  # relative Floquet boundary-condition residual


def eigenfunction(problem: FloquetProblem, E: float, lam) -> EigenSolution:
    """Discrete eigenfunction at a (near-)eigenvalue for exponent lam.

    Normalised to y(a) = 1 when y(a) is bounded away from zero, otherwise to
    y'(a) = 1.
    """
    lam = _check_exponent(lam)
    T = problem.period
    target = 2.0 * math.cos(lam.imag * T)
    d = discriminant(problem, E)
    if abs(d - target) > 1e-3:
        raise NoEigenfunctionError(
            f"E={E} is not near an eigenvalue for lam={lam}: "
            f"|Delta - 2 cos(alpha T)| = {abs(d - target):.3e}",
            residual=abs(d - target),
        )

    M = monodromy(problem, E)
    rho = cmath.exp(lam * T)
    if abs(rho.imag) < 1e-9:
        # periodic / antiperiodic: real eigenvector from the SVD null space
        _, _, vt = np.linalg.svd(M - rho.real * np.eye(2))
        v = vt[-1]
    else:
        w, vecs = np.linalg.eig(M)
        v = vecs[:, int(np.argmin(np.abs(w - rho)))]

    scale = np.max(np.abs(v))
    if abs(v[0]) > 1e-4 * scale:
        v = v / v[0]
    else:
        v = v / v[1]
    if np.max(np.abs(np.imag(np.atleast_1d(v)))) < 1e-12:
        v = np.real(v)

    mats = _period_matrices(problem, E)
    n = mats.shape[0]
    nodes = problem.grid.nodes
    node_values = np.empty((n + 1, 3), dtype=v.dtype)
    node_values[0] = (nodes[0], v[0], v[1])
    cur = np.array(v)
    for k in range(n):
        cur = mats[k] @ cur
        node_values[k + 1] = (nodes[k + 1], cur[0], cur[1])

    bc = np.linalg.norm(cur - rho * np.asarray(v, dtype=complex))
    residual = float(bc / np.linalg.norm(v))

    sol = EigenSolution(
        energy=float(E),
        lam=lam,
        node_values=node_values,
        parity="none",
        residual=residual,
    )
    return EigenSolution(
        energy=sol.energy,
        lam=sol.lam,
        node_values=sol.node_values,
        parity=classify_parity(sol, problem),
        residual=sol.residual,
    )


def classify_parity(solution: EigenSolution, problem: FloquetProblem) -> str:
    """Parity of the node samples about the period midpoint.

    Returns "none" when the potential itself is not symmetric about the
    midpoint, or when neither the symmetric nor the antisymmetric residual
    passes the 1e-4 * max|y| bound.
    """
    values = sample(problem.potential, problem.grid)
    vscale = max(float(np.max(np.abs(values))), 1.0)
    if np.max(np.abs(values - values[::-1])) > 1e-10 * vscale:
        return "none"
    y = np.real(solution.node_values[:, 1])
    yscale = float(np.max(np.abs(y)))
    if yscale == 0.0:
        return "none"
    even_res = np.max(np.abs(y - y[::-1]))
    odd_res = np.max(np.abs(y + y[::-1]))
    if even_res <= 1e-4 * yscale:
        return "even"
    if odd_res <= 1e-4 * yscale:
        return "odd"
    return "none"
