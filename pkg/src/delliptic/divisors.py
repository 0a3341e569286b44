"""Divisor-power sums and their convolution identities.

sigma_k(d) = sum of a^k over the positive divisors a of d, tau(d) = number of
divisors. The three convolutions of sigma_1 over ordered compositions of d
admit closed forms in sigma_1, sigma_3, sigma_5:

    sum_{d1+d2=d}    s1(d1)s1(d2)        = (-d/2 + 1/12) s1(d) + 5/12 s3(d)
    sum_{d1+d2=d} d1 s1(d1)s1(d2)        = (-d^2/4 + d/24) s1(d) + 5d/24 s3(d)
    sum_{d1+d2+d3=d} s1(d1)s1(d2)s1(d3)  = (d^2/8 - d/16 + 1/192) s1(d)
                                           + (-5d/32 + 5/96) s3(d) + 7/192 s5(d)

These identities carry the whole assembly downstream, so every convolution is
evaluated BOTH by direct summation and by its closed form, and the two must
agree exactly (CrossCheckError otherwise). Divisor enumeration is trial
division up to sqrt(d); inputs stay in the low thousands.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import CrossCheckError

__all__ = ["divisors", "sigma", "tau", "conv2", "conv2_weighted", "conv3"]


@lru_cache(maxsize=None)
def divisors(d: int) -> tuple[int, ...]:
    """Sorted positive divisors of d >= 1."""
    if d <= 0:
        raise ValueError(f"d must be a positive integer, got {d}")
    found = set()
    for a in range(1, isqrt(d) + 1):
        if d % a == 0:
            found.add(a)
            found.add(d // a)
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def sigma(k: int, d: int) -> int:
    """sigma_k(d): sum of k-th powers of the divisors of d."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return sum(a**k for a in divisors(d))


def tau(d: int) -> int:
    """Number of positive divisors of d."""
    return len(divisors(d))


def _check(name: str, d: int, direct: int, closed: Fraction) -> int:
    if direct != closed:
        raise CrossCheckError(
            f"{name}({d}): direct sum {direct} != closed form {closed}"
        )
    return direct


@lru_cache(maxsize=None)
def conv2(d: int) -> int:
    """sum over d1+d2=d (d1,d2 >= 1) of sigma_1(d1)sigma_1(d2)."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    direct = sum(sigma(1, d1) * sigma(1, d - d1) for d1 in range(1, d))
    closed = (Fraction(-d, 2) + Fraction(1, 12)) * sigma(1, d) + Fraction(5, 12) * sigma(3, d)
    return _check("conv2", d, direct, closed)


@lru_cache(maxsize=None)
def conv2_weighted(d: int) -> int:
    """sum over d1+d2=d of d1*sigma_1(d1)sigma_1(d2)."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    direct = sum(d1 * sigma(1, d1) * sigma(1, d - d1) for d1 in range(1, d))
    closed = (Fraction(-d * d, 4) + Fraction(d, 24)) * sigma(1, d) + Fraction(5, 24) * d * sigma(3, d)
    return _check("conv2_weighted", d, direct, closed)


@lru_cache(maxsize=None)
def conv3(d: int) -> int:
    """sum over d1+d2+d3=d (all >= 1) of sigma_1(d1)sigma_1(d2)sigma_1(d3)."""
    if d < 3:
        raise ValueError(f"d must be >= 3, got {d}")
    direct = sum(
        sigma(1, d1) * sigma(1, d2) * sigma(1, d - d1 - d2)
        for d1 in range(1, d - 1)
        for d2 in range(1, d - d1)
    )
    closed = (
        (Fraction(d * d, 8) - Fraction(d, 16) + Fraction(1, 192)) * sigma(1, d)
        + (Fraction(-5 * d, 32) + Fraction(5, 96)) * sigma(3, d)
        + Fraction(7, 192) * sigma(5, d)
    )
    return _check("conv3", d, direct, closed)
