"""Mathieu equation benchmark: y'' + (E - 2q cos 2x) y = 0, q = 0.2.

For small q the first characteristic values have classical power-series
expansions, which makes this the natural accuracy yardstick for the
spline-transfer-matrix solver.  The table below shows the relative percent
error as the Taylor order m and piece count n grow.
"""

import math

import numpy as np

from bandspline import (
    FloquetProblem,
    Grid,
    eigenfunction,
    find_eigenvalues,
    fourier_fit,
    mathieu,
    mathieu_reference,
    relative_percent_error,
)

Q = 0.2


def main():
    refs = [
        (k, parity, mathieu_reference(Q, k, parity))
        for k in (1, 2, 3)
        for parity in ("even", "odd")
    ]

    print("relative percent error vs series references")
    header = "  ".join(f"{k}{parity[0]}" for k, parity, _ in refs)
    print(f"  m   n    {header}")
    for m in (3, 5, 7):
        for n in (50, 100):
            prob = FloquetProblem(mathieu(Q), Grid(0.0, 2.0 * math.pi, n), m=m)
            found = find_eigenvalues(prob, 0j, (0.5, 10.0))
            errs = []
            for _, _, ref in refs:
                best = min(found, key=lambda E: abs(E - ref))
                errs.append(relative_percent_error(ref, best))
            cells = "  ".join(f"{e:.1e}" for e in errs)
            print(f"  {m}  {n:4d}  {cells}")

    # the lowest even state is almost a pure cos x
    prob = FloquetProblem(mathieu(Q), Grid(0.0, 2.0 * math.pi, 100), m=5)
    ref = mathieu_reference(Q, 1, "even")
    E = min(find_eigenvalues(prob, 0j, (1.0, 1.4)), key=lambda x: abs(x - ref))
    sol = eigenfunction(prob, E, 0j)
    pts = np.column_stack(
        [np.real(sol.node_values[:, 0]), np.real(sol.node_values[:, 1])]
    )
    ff = fourier_fit(pts, 2.0 * math.pi, 3)
    print(f"\nlowest even state, E = {E:.6f} ({sol.parity})")
    print(f"  y(x) ~ {ff.cosine_coeffs[0]:+.6f} cos x {ff.cosine_coeffs[2]:+.6f} cos 3x")
    print(f"  fit residual {ff.residual:.2e}")


if __name__ == "__main__":
    main()
