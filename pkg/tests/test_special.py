"""Apery numbers and reciprocal-Bessel coefficients.

The exact omega values are cross-checked against a second, structurally
different oracle: inverting the defining power series over the rationals.
"""

from fractions import Fraction
from math import comb, factorial

import pytest

from lucaslp.modmath import primes_upto
from lucaslp.special import apery, apery_mod, omega, omega_mod

OMEGA_FIRST = [
    1,
    1,
    3,
    19,
    211,
    3651,
    90921,
    3081513,
    136407699,
    7642177651,
    528579161353,
    44237263696473,
    4405990782649369,
]

APERY_FIRST = [1, 5, 73, 1445, 33001, 819005, 21460825]


def omega_by_series_inversion(count):
    # coefficients c of the reciprocal of sum (-1)^k z^k / (k!)^2,
    # recovered over Q; then w(n) = c(n) * (n!)^2
    a = [Fraction((-1) ** k, factorial(k) ** 2) for k in range(count)]
    c = [Fraction(1)]
    for n in range(1, count):
        c.append(-sum(a[k] * c[n - k] for k in range(1, n + 1)))
    out = []
    for n in range(count):
        value = c[n] * factorial(n) ** 2
        assert value.denominator == 1
        out.append(value.numerator)
    return out


def test_omega_first_values():
    assert [omega(n) for n in range(len(OMEGA_FIRST))] == OMEGA_FIRST
    with pytest.raises(ValueError):
        omega(-1)


def test_omega_matches_series_inversion():
    expected = omega_by_series_inversion(26)
    assert [omega(n) for n in range(26)] == expected


def test_omega_convolution_identity():
    # sum over k of (-1)^k C(n,k)^2 w(n-k) vanishes for n >= 1
    for n in range(1, 41):
        acc = sum((-1) ** k * comb(n, k) ** 2 * omega(n - k) for k in range(n + 1))
        assert acc == 0, n


def test_omega_mod_matches_exact():
    for p in primes_upto(13):
        for n in range(61):
            assert omega_mod(n, p) == omega(n) % p, (n, p)
    with pytest.raises(ValueError):
        omega_mod(3, 8)


def test_apery_first_values():
    assert [apery(n) for n in range(len(APERY_FIRST))] == APERY_FIRST
    with pytest.raises(ValueError):
        apery(-1)


def test_apery_termwise_definition():
    # recompute one value by hand from the binomial sum
    n = 3
    expected = sum(comb(3, k) ** 2 * comb(3 + k, k) ** 2 for k in range(4))
    assert apery(n) == expected == 1445


def test_apery_mod_matches_exact():
    for p in primes_upto(13):
        for n in range(81):
            assert apery_mod(n, p) == apery(n) % p, (n, p)
    with pytest.raises(ValueError):
        apery_mod(-1, 5)


def test_apery_mod_large_index():
    # Lucas binomials keep huge indices tractable; spot-check against the
    # digit-product structure: A(p) mod p = A(1)*A(0) ... built indirectly
    # from small exact values
    for p in primes_upto(13):
        assert apery_mod(p, p) == apery(1) * apery(0) % p
        assert apery_mod(p + 1, p) == apery(1) ** 2 % p
