"""Periodic potentials: built-in families, node sampling and exact local
Taylor data.

Built-in kinds (one period each):

* ``power_abs(s)``: V(x) = |x|^s on [-1, 1]
* ``harmonic``:     V(x) = x^2  on [-1, 1]
* ``quartic``:      V(x) = x^4  on [-1, 1]
* ``mathieu(q)``:   V(x) = 2q cos 2x on [0, 2*pi]
* ``free``:         V(x) = 0 on [-1, 1]
* ``tabulated``:    node values on a declared uniform grid

All potentials are extended by periodicity outside their period interval.
Exact Taylor coefficients of the analytic kinds feed the high-order
continuation comparator; they are never obtained by numerical
differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, TabulatedParseError, UnsupportedOperationError
from .spline import Grid

__all__ = [
    "PotentialSpec",
    "power_abs",
    "mathieu",
    "harmonic",
    "quartic",
    "free",
    "tabulated",
    "sample",
    "local_taylor",
    "parse_tabulated",
    "emit_tabulated",
]

_INTERVAL_RTOL = 1e-12


@dataclass(frozen=True)
class PotentialSpec:
    """One period of a periodic potential."""

    kind: str
    a: float
    b: float
    s: float | None = None
    q: float | None = None
    values: tuple[float, ...] | None = None

    @property
    def period(self) -> float:
        return self.b - self.a

    def __call__(self, x):
        """Evaluate V at x (periodic extension).  Undefined for tabulated
        potentials, which only carry node values."""
        if self.kind == "tabulated":
            raise UnsupportedOperationError(
                "tabulated potentials are defined at their nodes only"
            )
        x = np.asarray(x, dtype=float)
        t = self.a + np.mod(x - self.a, self.period)
        if self.kind == "power_abs":
            v = np.abs(t) ** self.s
        elif self.kind == "harmonic":
            v = t**2
        elif self.kind == "quartic":
            v = t**4
        elif self.kind == "mathieu":
            v = 2.0 * self.q * np.cos(2.0 * t)
        elif self.kind == "free":
            v = np.zeros_like(t)
        else:  # pragma: no cover - factory functions prevent this
            raise UnsupportedOperationError(f"unknown potential kind {self.kind!r}")
        return float(v) if v.ndim == 0 else v


def power_abs(s: float) -> PotentialSpec:
    if not s > 0:
        raise InvalidInputError(f"power_abs exponent must be > 0, got {s}")
    return PotentialSpec("power_abs", -1.0, 1.0, s=float(s))


def mathieu(q: float) -> PotentialSpec:
    return PotentialSpec("mathieu", 0.0, 2.0 * math.pi, q=float(q))


def harmonic() -> PotentialSpec:
    return PotentialSpec("harmonic", -1.0, 1.0)


def quartic() -> PotentialSpec:
    return PotentialSpec("quartic", -1.0, 1.0)


def free() -> PotentialSpec:
    return PotentialSpec("free", -1.0, 1.0)


def tabulated(values, grid: Grid) -> PotentialSpec:
    values = tuple(float(v) for v in values)
    if len(values) != grid.n + 1:
        raise InvalidInputError(
            f"expected {grid.n + 1} values for n={grid.n}, got {len(values)}"
        )
    return PotentialSpec("tabulated", grid.a, grid.b, values=values)


def _grid_matches_period(potential: PotentialSpec, grid: Grid) -> bool:
    scale = max(abs(potential.a), abs(potential.b), 1.0)
    return (
        abs(grid.a - potential.a) <= _INTERVAL_RTOL * scale
        and abs(grid.b - potential.b) <= _INTERVAL_RTOL * scale
    )


def sample(potential: PotentialSpec, grid: Grid) -> np.ndarray:
    """Node values V(x_k), k = 0..n, over one period."""
    if not _grid_matches_period(potential, grid):
        raise InvalidInputError(
            f"grid [{grid.a}, {grid.b}] does not span the period interval "
            f"[{potential.a}, {potential.b}]"
        )
    if potential.kind == "tabulated":
        if len(potential.values) != grid.n + 1:
            raise InvalidInputError(
                f"tabulated potential has {len(potential.values)} values, "
                f"grid needs {grid.n + 1}"
            )
        return np.array(potential.values)
    return np.asarray(potential(grid.nodes), dtype=float)


def local_taylor(potential: PotentialSpec, x0: float, order: int) -> np.ndarray:
    """Coefficients of V(x0 + t) in powers of t, up to t^order.

    Analytic kinds only.  |x|^s needs integer s; at x0 = 0 the forward
    (t >= 0) branch is used, which is the branch a left-node piecewise
    expansion propagates over.
    """
    if order < 0:
        raise InvalidInputError(f"order must be >= 0, got {order}")
    if not (potential.a - 1e-12 <= x0 <= potential.b + 1e-12):
        raise InvalidInputError(
            f"x0={x0} outside period interval [{potential.a}, {potential.b}]"
        )
    c = np.zeros(order + 1)
    if potential.kind == "free":
        return c
    if potential.kind == "harmonic":
        c[0] = x0**2
        if order >= 1:
            c[1] = 2.0 * x0
        if order >= 2:
            c[2] = 1.0
        return c
    if potential.kind == "quartic":
        for j in range(min(order, 4) + 1):
            c[j] = math.comb(4, j) * x0 ** (4 - j)
        return c
    if potential.kind == "mathieu":
        # d^j/dt^j [2q cos(2 x0 + 2t)] = 2q 2^j cos(2 x0 + 2t + j pi/2)
        for j in range(order + 1):
            c[j] = (
                2.0
                * potential.q
                * 2.0**j
                * math.cos(2.0 * x0 + j * math.pi / 2.0)
                / math.factorial(j)
            )
        return c
    if potential.kind == "power_abs":
        s = potential.s
        if s != int(s):
            raise UnsupportedOperationError(
                f"|x|^s has no Taylor data at non-integer s={s}"
            )
        s = int(s)
        if x0 == 0.0:
            if s <= order:
                c[s] = 1.0
            return c
        sign = 1.0 if x0 > 0 else (-1.0) ** s
        for j in range(min(order, s) + 1):
            c[j] = sign * math.comb(s, j) * x0 ** (s - j)
        return c
    raise UnsupportedOperationError(
        f"no Taylor data for potential kind {potential.kind!r}"
    )


def parse_tabulated(text: str) -> tuple[PotentialSpec, Grid]:
    """Parse the tabulated-potential text format.

    Line 1 holds ``a b n``; the remaining lines hold the n+1 node values,
    whitespace- or newline-separated.
    """
    lines = text.splitlines()
    header_idx = None
    for i, line in enumerate(lines):
        if line.strip():
            header_idx = i
            break
    if header_idx is None:
        raise TabulatedParseError("empty input", line=1)
    fields = lines[header_idx].split()
    if len(fields) != 3:
        raise TabulatedParseError(
            f"header must be 'a b n', found {len(fields)} fields", line=header_idx + 1
        )
    try:
        a, b = float(fields[0]), float(fields[1])
    except ValueError:
        raise TabulatedParseError("header endpoints must be numbers", line=header_idx + 1)
    try:
        n = int(fields[2])
    except ValueError:
        raise TabulatedParseError("piece count must be an integer", line=header_idx + 1)
    if n < 1:
        raise TabulatedParseError(f"piece count must be >= 1, got {n}", line=header_idx + 1)
    if not b > a:
        raise TabulatedParseError(f"need a < b, got a={a}, b={b}", line=header_idx + 1)

    values = []
    for i in range(header_idx + 1, len(lines)):
        for tok in lines[i].split():
            try:
                values.append(float(tok))
            except ValueError:
                raise TabulatedParseError(f"bad value {tok!r}", line=i + 1)
    if len(values) != n + 1:
        raise TabulatedParseError(
            f"expected {n + 1} values, found {len(values)}", line=len(lines)
        )
    grid = Grid(a, b, n)
    return tabulated(values, grid), grid


def emit_tabulated(potential: PotentialSpec, grid: Grid | None = None) -> str:
    """Serialise a potential's node values in the tabulated text format.

    Values are printed with 17 significant digits so parse/emit round-trips
    are bit-exact.
    """
    if potential.kind == "tabulated":
        if grid is None:
            grid = Grid(potential.a, potential.b, len(potential.values) - 1)
        values = sample(potential, grid)
    else:
        if grid is None:
            raise InvalidInputError("a grid is required to tabulate an analytic potential")
        values = sample(potential, grid)
    lines = [f"{grid.a:.17g} {grid.b:.17g} {grid.n}"]
    lines.extend(f"{v:.17g}" for v in values)
    return "\n".join(lines) + "\n"
