"""Closed-form threshold and bound functions, in double precision with an
optional 50-digit mode for cross-checking."""

from __future__ import annotations

import math

import mpmath

# Constants fixed by the analysis this toolkit makes observable.
STEWART_CONSTANT = 51.9
DENSITY_CONSTANT = 156

HIGH_PRECISION_DPS = 50


def _eval(value_double, value_high, precision: str):
    if precision == "double":
        return value_double()
    if precision == "high":
        with mpmath.workdps(HIGH_PRECISION_DPS):
            return value_high()
    raise ValueError("precision must be 'double' or 'high'")


def default_y(N: int, precision: str = "double"):
    """exp((1/156) * ln N / ln ln N); needs N >= 3 so ln ln N > 0."""
    if N <= 2:
        raise ValueError("N must be >= 3")
    return _eval(
        lambda: math.exp(math.log(N) / (DENSITY_CONSTANT * math.log(math.log(N)))),
        lambda: mpmath.exp(mpmath.log(N) / (DENSITY_CONSTANT * mpmath.log(mpmath.log(N)))),
        precision,
    )


def stewart_bound(p: int, precision: str = "double"):
    """p * exp(-ln p / (51.9 * ln ln p)); rejected below p = 17 where
    ln ln p is too small for the expression to act as a bound."""
    if p <= 16:
        raise ValueError("p must be >= 17")
    return _eval(
        lambda: p * math.exp(-math.log(p) / (STEWART_CONSTANT * math.log(math.log(p)))),
        lambda: p
        * mpmath.exp(
            -mpmath.log(p) / (mpmath.mpf("51.9") * mpmath.log(mpmath.log(p)))
        ),
        precision,
    )


def density_bound(N: int, precision: str = "double"):
    """N * exp(-ln N / (156 * ln ln N)) for N >= 3."""
    if N <= 2:
        raise ValueError("N must be >= 3")
    return _eval(
        lambda: N * math.exp(-math.log(N) / (DENSITY_CONSTANT * math.log(math.log(N)))),
        lambda: N
        * mpmath.exp(-mpmath.log(N) / (DENSITY_CONSTANT * mpmath.log(mpmath.log(N)))),
        precision,
    )
