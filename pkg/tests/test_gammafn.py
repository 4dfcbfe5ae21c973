"""Gamma implementation against the platform libm as an independent oracle."""

import math

import pytest

from fracops.gammafn import gamma


def test_integer_values():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(2.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)


def test_half_integer():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(1.5) == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-14)


def test_sweep_against_libm():
    # Geometric sweep across the operational range. The [1e-3, 141] band is
    # where the package actually evaluates gamma (orders are capped at 100).
    x = 1e-3
    while x <= 141.0:
        rel = abs(gamma(x) - math.gamma(x)) / math.gamma(x)
        assert rel < 1e-13, (x, rel)
        x *= 1.013


def test_large_arguments_within_double_range():
    # Beyond ~141 the huge power costs a little accuracy; past 171.6 the
    # true value overflows a double no matter the algorithm.
    x = 141.0
    while x <= 170.0:
        rel = abs(gamma(x) - math.gamma(x)) / math.gamma(x)
        assert rel < 2.5e-13, (x, rel)
        x += 1.37


def test_reflection_region():
    for x in (1e-3, 0.01, 0.1, 0.3, 0.499):
        rel = abs(gamma(x) - math.gamma(x)) / math.gamma(x)
        assert rel < 1e-13, (x, rel)


def test_rejects_nonpositive_and_nonfinite():
    for bad in (0.0, -1.0, -0.5, math.inf, math.nan):
        with pytest.raises(ValueError):
            gamma(bad)


def test_overflow_raises():
    with pytest.raises(OverflowError):
        gamma(172.0)
