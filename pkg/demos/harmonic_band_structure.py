"""Band structure of the periodic harmonic potential V(x) = x^2 on [-1, 1].

The Floquet discriminant Delta(E) = tr M(E) classifies every energy: allowed
bands have |Delta| <= 2, gaps have |Delta| > 2.  Periodic eigenvalues sit
where Delta = 2.  The quartic x^4 and the free particle V = 0 round out the
picture.
"""

import math

import numpy as np

from bandspline import (
    FloquetProblem,
    Grid,
    band_structure,
    discriminant,
    eigenfunction,
    find_eigenvalues,
    free,
    harmonic,
    power_abs,
)


def main():
    prob = FloquetProblem(harmonic(), Grid(-1.0, 1.0, 100), m=5)

    print("periodic eigenvalues (Delta = 2) of V = x^2:")
    for E in find_eigenvalues(prob, 0j, (0.0, 45.0)):
        sol = eigenfunction(prob, E, 0j)
        print(f"  E = {E:11.6f}   parity {sol.parity}")

    bs = band_structure(prob, (0.0, 45.0))
    print("\nallowed bands:")
    for lo, hi in bs.bands:
        print(f"  [{lo:9.5f}, {hi:9.5f}]")
    print("gaps:")
    for lo, hi in bs.gaps:
        print(f"  [{lo:9.5f}, {hi:9.5f}]   width {hi - lo:.5f}")

    quartic = FloquetProblem(power_abs(4.0), Grid(-1.0, 1.0, 100), m=5)
    E4 = min(
        find_eigenvalues(quartic, 0j, (9.5, 10.5)), key=lambda E: abs(E - 10.159)
    )
    print(f"\nquartic V = x^4: periodic eigenvalue near 10.159 -> {E4:.7f}")

    # sanity check against the only potential with a closed form
    fp = FloquetProblem(free(), Grid(-1.0, 1.0, 100), m=9)
    worst = max(
        abs(discriminant(fp, E) - 2.0 * math.cos(2.0 * math.sqrt(E)))
        for E in np.linspace(0.1, 45.0, 200)
    )
    print(f"free particle: max |Delta - 2 cos(2 sqrt E)| = {worst:.2e}")


if __name__ == "__main__":
    main()
