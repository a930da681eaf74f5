import math

import numpy as np
import pytest

from bandspline import (
    Grid,
    InvalidInputError,
    TabulatedParseError,
    UnsupportedOperationError,
    emit_tabulated,
    free,
    harmonic,
    local_taylor,
    mathieu,
    parse_tabulated,
    power_abs,
    quartic,
    sample,
    tabulated,
)


def test_builtin_values():
    assert harmonic()(0.5) == pytest.approx(0.25)
    assert quartic()(-0.5) == pytest.approx(0.0625)
    assert power_abs(1.0)(-0.3) == pytest.approx(0.3)
    assert mathieu(0.2)(0.0) == pytest.approx(0.4)
    assert free()(0.7) == 0.0


def test_periodic_extension():
    pot = harmonic()
    # period 2: V(x + 2) = V(x)
    for x in (-0.7, 0.1, 0.9):
        assert pot(x + 2.0) == pytest.approx(pot(x), abs=1e-12)
    pm = mathieu(0.3)
    assert pm(2.0 * math.pi + 1.0) == pytest.approx(pm(1.0), abs=1e-12)


def test_power_abs_rejects_nonpositive_exponent():
    with pytest.raises(InvalidInputError):
        power_abs(0.0)


def test_sample_matches_direct_evaluation():
    pot = quartic()
    g = Grid(-1.0, 1.0, 10)
    vals = sample(pot, g)
    assert np.allclose(vals, g.nodes**4, atol=1e-14)


def test_sample_rejects_mismatched_grid():
    with pytest.raises(InvalidInputError):
        sample(harmonic(), Grid(0.0, 1.0, 10))


def test_tabulated_call_raises():
    g = Grid(0.0, 1.0, 2)
    pot = tabulated([1.0, 2.0, 3.0], g)
    with pytest.raises(UnsupportedOperationError):
        pot(0.5)
    assert np.allclose(sample(pot, g), [1.0, 2.0, 3.0])


def test_local_taylor_matches_finite_differences():
    # central differences on the analytic kinds away from kinks
    cases = [
        (harmonic(), 0.4),
        (quartic(), -0.6),
        (mathieu(0.2), 1.3),
        (power_abs(2.0), 0.5),
    ]
    eps = 1e-5
    for pot, x0 in cases:
        c = local_taylor(pot, x0, 2)
        v0 = pot(x0)
        d1 = (pot(x0 + eps) - pot(x0 - eps)) / (2.0 * eps)
        d2 = (pot(x0 + eps) - 2.0 * v0 + pot(x0 - eps)) / eps**2
        assert c[0] == pytest.approx(v0, abs=1e-12)
        assert c[1] == pytest.approx(d1, abs=1e-6)
        assert c[2] == pytest.approx(d2 / 2.0, abs=1e-4)


def test_local_taylor_series_sums_back():
    pot = mathieu(0.5)
    x0, t = 2.0, 0.01
    c = local_taylor(pot, x0, 12)
    val = sum(c[j] * t**j for j in range(13))
    assert val == pytest.approx(pot(x0 + t), abs=1e-14)


def test_local_taylor_power_abs_at_origin_uses_forward_branch():
    c = local_taylor(power_abs(3.0), 0.0, 4)
    assert np.allclose(c, [0.0, 0.0, 0.0, 1.0, 0.0])


def test_local_taylor_rejects_noninteger_power():
    with pytest.raises(UnsupportedOperationError):
        local_taylor(power_abs(1.5), 0.5, 3)


def test_parse_emit_roundtrip():
    g = Grid(-1.0, 1.0, 6)
    text = emit_tabulated(harmonic(), g)
    pot, g2 = parse_tabulated(text)
    assert g2 == g
    assert np.allclose(sample(pot, g2), g.nodes**2, atol=0.0)
    assert emit_tabulated(pot) == text


def test_parse_errors_carry_line_numbers():
    with pytest.raises(TabulatedParseError, match="line 1"):
        parse_tabulated("")
    with pytest.raises(TabulatedParseError, match="line 1"):
        parse_tabulated("0 1\n0 0")
    with pytest.raises(TabulatedParseError, match="line 2"):
        parse_tabulated("0 1 2\n0 oops 0")
    with pytest.raises(TabulatedParseError):
        parse_tabulated("0 1 2\n0 0")  # missing a value
    with pytest.raises(TabulatedParseError, match="line 1"):
        parse_tabulated("1 0 2\n0 0 0")


def test_parse_accepts_values_across_lines():
    pot, g = parse_tabulated("0 1 3\n1 2\n3\n4\n")
    assert g.n == 3
    assert pot.values == (1.0, 2.0, 3.0, 4.0)
