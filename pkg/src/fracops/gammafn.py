"""Gamma function via the Lanczos approximation.

Self-contained double-precision implementation (g = 7, 9 coefficients,
reflection below 1/2) so that every weight formula in this package is
reproducible without linking against a platform libm gamma.
"""

from __future__ import annotations

import math

# Lanczos coefficients for g = 7 (Godfrey's tabulation).
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = 2.5066282746310002


def gamma(x: float) -> float:
    """Gamma(x) for real x > 0.

    Relative error is below ~1e-14 across [1e-3, 170]; arguments past
    ~171.6 overflow a double and raise OverflowError.
    """
    if not math.isfinite(x):
        raise ValueError(f"gamma argument must be finite, got {x!r}")
    if x <= 0.0:
        raise ValueError(f"gamma argument must be positive, got {x!r}")
    if x < 0.5:
        # Reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)).
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    series = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    exponent = z + 0.5
    if exponent * math.log10(t) <= 300.0:
        value = _SQRT_TWO_PI * series * t**exponent * math.exp(-t)
    else:
        # t**exponent alone would overflow while the product is still
        # representable; interleave half the power with exp(-t).
        half_pow = t ** (0.5 * exponent)
        value = _SQRT_TWO_PI * series * half_pow * math.exp(-t) * half_pow
    if math.isinf(value):
        raise OverflowError(f"gamma({x}) overflows double precision")
    return value
