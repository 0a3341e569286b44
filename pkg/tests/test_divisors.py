"""Divisor-power sums and convolution closed forms."""

import math
import random
from fractions import Fraction as F

import pytest

from delliptic.divisors import conv2, conv2_weighted, conv3, divisors, sigma, tau


def brute_sigma(k, d):
    return sum(a**k for a in range(1, d + 1) if d % a == 0)


class TestSigmaTau:
    def test_sigma_examples(self):
        assert sigma(1, 1) == 1
        assert sigma(1, 6) == 12
        assert sigma(3, 4) == 1 + 8 + 64 == 73

    def test_sigma_against_brute_force(self):
        for d in range(1, 80):
            for k in (0, 1, 3, 5):
                assert sigma(k, d) == brute_sigma(k, d)

    def test_tau_examples(self):
        assert tau(1) == 1
        assert tau(6) == 4
        assert tau(12) == len([a for a in range(1, 13) if 12 % a == 0]) == 6

    def test_divisors_sorted(self):
        assert divisors(12) == (1, 2, 3, 4, 6, 12)

    def test_rejects_nonpositive(self):
        for bad in (0, -3):
            with pytest.raises(ValueError):
                divisors(bad)
            with pytest.raises(ValueError):
                sigma(1, bad)
            with pytest.raises(ValueError):
                tau(bad)

    def test_multiplicative_on_coprime_pairs(self):
        rng = random.Random(303)
        found = 0
        while found < 60:
            m, n = rng.randint(2, 100), rng.randint(2, 100)
            if math.gcd(m, n) != 1 or m * n > 10**4:
                continue
            found += 1
            for k in (1, 3, 5):
                assert sigma(k, m * n) == sigma(k, m) * sigma(k, n)


class TestConvolutions:
    def test_conv2_examples(self):
        assert conv2(2) == 1
        assert conv2(4) == 1 * 4 + 3 * 3 + 4 * 1 == 17
        # closed form evaluated by hand at d = 4
        assert F(-23, 12) * 7 + F(5, 12) * 73 == 17

    def test_conv2_weighted_examples(self):
        assert conv2_weighted(2) == 1
        assert conv2_weighted(3) == 1 * 1 * 3 + 2 * 3 * 1 == 9

    def test_conv2_weighted_symmetry(self):
        # reversing the composition swaps the weight d1 <-> d2
        for d in range(2, 60):
            reverse = sum(
                (d - d1) * sigma(1, d1) * sigma(1, d - d1) for d1 in range(1, d)
            )
            assert conv2_weighted(d) + reverse == d * conv2(d)

    def test_conv3_examples(self):
        assert conv3(3) == 1
        assert conv3(4) == 9  # three orderings of (1,1,2), each contributing 3
        assert F(2359 - 8030 + 7399, 192) == 9  # closed form at d = 4

    def test_direct_sums_match_functions(self):
        # independent brute-force oracle, recomputed here
        for d in range(2, 41):
            direct2 = sum(
                brute_sigma(1, d1) * brute_sigma(1, d - d1) for d1 in range(1, d)
            )
            assert conv2(d) == direct2
            directw = sum(
                d1 * brute_sigma(1, d1) * brute_sigma(1, d - d1)
                for d1 in range(1, d)
            )
            assert conv2_weighted(d) == directw
        for d in range(3, 41):
            direct3 = sum(
                brute_sigma(1, a) * brute_sigma(1, b) * brute_sigma(1, d - a - b)
                for a in range(1, d)
                for b in range(1, d - a)
            )
            assert conv3(d) == direct3

    def test_closed_forms_to_200(self):
        # the functions cross-check direct vs closed internally
        for d in range(2, 201):
            conv2(d)
            conv2_weighted(d)
            if d >= 3:
                conv3(d)

    def test_rejects_small_arguments(self):
        with pytest.raises(ValueError):
            conv2(1)
        with pytest.raises(ValueError):
            conv2_weighted(1)
        with pytest.raises(ValueError):
            conv3(2)
