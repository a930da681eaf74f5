import math

import numpy as np
import pytest

from bandspline import (
    Grid,
    InvalidInputError,
    coefficient_matrix,
    compute_r,
    fit,
    objective,
    variational_a1,
    variational_a1_closed_form,
)

import oracles


def test_grid_basics():
    g = Grid(-1.0, 1.0, 10)
    assert g.h == pytest.approx(0.2)
    assert g.nodes[0] == -1.0
    assert g.nodes[-1] == 1.0
    assert len(g.nodes) == 11


def test_grid_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        Grid(1.0, -1.0, 10)
    with pytest.raises(InvalidInputError):
        Grid(0.0, 1.0, 0)


def test_grid_from_nodes_rejects_nonuniform():
    with pytest.raises(InvalidInputError):
        Grid.from_nodes(np.array([0.0, 0.1, 0.3, 0.4]))
    g = Grid.from_nodes(np.linspace(0.0, 1.0, 6))
    assert g.n == 5


def test_fit_matches_kkt_oracle():
    rng = np.random.default_rng(7)
    for n in (2, 5, 13, 40):
        g = Grid(-1.0, 2.0, n)
        y = rng.normal(size=n + 1)
        interp = fit(y, g)
        a_ref = oracles.spline_quadratic_coeffs(y, g.h)
        assert np.allclose(interp.a_coeffs, a_ref, atol=1e-10)


def test_evaluate_matches_oracle_pointwise():
    g = Grid(-1.0, 1.0, 8)
    y = np.array([abs(x) for x in g.nodes])
    interp = fit(y, g)
    a_ref = oracles.spline_quadratic_coeffs(y, g.h)
    for x in np.linspace(-1.0, 1.0, 57):
        ref = oracles.spline_evaluate(x, g.nodes, y, a_ref)
        assert interp.evaluate(x) == pytest.approx(ref, abs=1e-12)


def test_interpolates_nodes_exactly():
    g = Grid(0.0, 2.0 * math.pi, 17)
    y = np.sin(g.nodes)
    interp = fit(y, g)
    for xk, yk in zip(g.nodes, y):
        assert interp.evaluate(xk) == pytest.approx(yk, abs=1e-13)


def test_reproduces_quadratics_exactly_even_n():
    # the alternating-sign structure cancels exactly only for even n
    g = Grid(-2.0, 3.0, 12)
    y = 1.5 * g.nodes**2 - 0.7 * g.nodes + 0.2
    interp = fit(y, g)
    xs = np.linspace(-2.0, 3.0, 101)
    vals = interp.evaluate(xs)
    assert np.allclose(vals, 1.5 * xs**2 - 0.7 * xs + 0.2, atol=1e-11)


def test_derivative_is_continuous_at_nodes():
    rng = np.random.default_rng(3)
    g = Grid(0.0, 1.0, 12)
    interp = fit(rng.normal(size=13), g)
    eps = 1e-8
    # the one-sided points sit eps away, so the derivative itself moves by
    # about 2 |a_k| eps; bound the jump by that scale
    slack = 4.0 * eps * np.max(np.abs(interp.a_coeffs))
    for xk in g.nodes[1:-1]:
        left = interp.derivative(xk - eps)
        right = interp.derivative(xk + eps)
        assert left == pytest.approx(right, abs=slack)


def test_variational_a1_is_objective_minimizer():
    rng = np.random.default_rng(11)
    g = Grid(0.0, 1.0, 9)
    y = rng.normal(size=10)
    interp = fit(y, g)
    base = objective(interp)
    signs = np.where(np.arange(1, g.n + 1) % 2 == 1, 1.0, -1.0)
    for delta in (-1e-3, 1e-3):
        perturbed = interp.a_coeffs + delta * signs
        h = g.h
        assert h**5 / 30.0 * np.sum(perturbed**2) > base


def test_closed_form_a1_matches_recurrence_form():
    rng = np.random.default_rng(5)
    for n in (2, 3, 10, 25):
        g = Grid(0.0, 1.0, n)
        y = rng.normal(size=n + 1)
        assert variational_a1(y, g) == pytest.approx(
            variational_a1_closed_form(y, g), abs=1e-10
        )


def test_compute_r_first_entry_zero():
    g = Grid(0.0, 1.0, 6)
    r = compute_r(np.arange(7.0) ** 2, g)
    assert r[0] == 0.0


def test_coefficient_matrix_row_sums_vanish():
    # constants are reproduced with zero curvature correction
    for n in (1, 2, 7, 30):
        C = coefficient_matrix(n)
        assert C.shape == (n, n + 1)
        assert np.allclose(C.sum(axis=1), 0.0, atol=1e-12)


def test_coefficient_matrix_reproduces_fit():
    # a_k = (C Y) / h^2 on any grid with the same n
    rng = np.random.default_rng(2)
    n = 14
    C = coefficient_matrix(n)
    for a, b in ((-1.0, 1.0), (0.0, 2.0 * math.pi)):
        g = Grid(a, b, n)
        y = rng.normal(size=n + 1)
        interp = fit(y, g)
        assert np.allclose(C @ y / g.h**2, interp.a_coeffs, atol=1e-10)


def test_fit_rejects_wrong_sample_count():
    with pytest.raises(InvalidInputError):
        fit(np.zeros(5), Grid(0.0, 1.0, 10))
