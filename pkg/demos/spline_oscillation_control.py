"""Why a piecewise quadratic beats one global polynomial.

A single degree-n interpolating polynomial through equidistant nodes
oscillates violently on targets with a kink (the Runge phenomenon).  The
variational quadratic spline keeps every piece as close as possible to the
underlying broken line, so its mean-square error just keeps falling with n.
"""

import math

import numpy as np

from bandspline import Grid, fit, lagrange_global_error, mean_square_interp_error


def spline_error(target, interval, n):
    g = Grid(interval[0], interval[1], n)
    interp = fit(np.array([target(x) for x in g.nodes]), g)
    return mean_square_interp_error(interp.evaluate, target, interval)


def main():
    print("mean-square spline error on |x| over [-1, 1]")
    for n in (10, 20, 50, 100):
        print(f"  n={n:4d}  e = {spline_error(abs, (-1, 1), n):.4e}")

    print("mean-square spline error on sin 2 pi x over [-1, 1]")
    f = lambda x: math.sin(2.0 * math.pi * x)
    for n in (10, 50, 100):
        print(f"  n={n:4d}  e = {spline_error(f, (-1, 1), n):.4e}")

    print("one global degree-20 polynomial on |x| instead:")
    print(f"  e = {lagrange_global_error(abs, (-1, 1), 20):.4e}  (vs "
          f"{spline_error(abs, (-1, 1), 20):.4e} for the spline)")


if __name__ == "__main__":
    main()
