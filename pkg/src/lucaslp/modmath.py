"""Exact and modular integer arithmetic: primality, digit expansions, binomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "NonInvertibleError",
    "Prime",
    "DigitExpansion",
    "is_prime",
    "primes_upto",
    "digits_base_p",
    "pow_mod",
    "inverse_mod",
    "binomial_exact",
    "binomial_mod_lucas",
]


class NonInvertibleError(ValueError):
    """Raised when asked for an inverse of a residue divisible by the modulus."""


# Deterministic Miller-Rabin witness set; sound for every n below 3.3e24,
# which covers the full supported range (indices up to 2**64 - 1).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(bound: int) -> list["Prime"]:
    """All primes p with 2 <= p <= bound, ascending."""
    return [Prime(n) for n in range(2, bound + 1) if is_prime(n)]


class Prime(int):
    """An int validated as prime on construction."""

    __slots__ = ()

    def __new__(cls, value) -> "Prime":
        if isinstance(value, Prime):
            return value
        value = int(value)
        if not is_prime(value):
            raise ValueError(f"not a prime: {value}")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class DigitExpansion:
    """Canonical little-endian base-p digits; digits[0] is least significant."""

    base: Prime
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        p = int(self.base)
        if not self.digits:
            raise ValueError("digit tuple must be non-empty; zero is (0,)")
        if any(d < 0 or d >= p for d in self.digits):
            raise ValueError(f"digit out of range for base {p}: {self.digits}")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError(f"trailing zero digit makes {self.digits} non-canonical")

    def value(self) -> int:
        n = 0
        for d in reversed(self.digits):
            n = n * int(self.base) + d
        return n


def digits_base_p(n: int, p) -> DigitExpansion:
    """Canonical base-p expansion of n >= 0."""
    p = Prime(p)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return DigitExpansion(p, (0,))
    digs = []
    while n:
        n, d = divmod(n, p)
        digs.append(d)
    return DigitExpansion(p, tuple(digs))


def pow_mod(base: int, exp: int, p) -> int:
    """base**exp mod p, with 0**0 == 1."""
    if exp < 0:
        raise ValueError(f"exp must be >= 0, got {exp}")
    return pow(base, exp, Prime(p))


def inverse_mod(a: int, p) -> int:
    """Multiplicative inverse of a modulo the prime p."""
    p = Prime(p)
    if a % p == 0:
        raise NonInvertibleError(f"{a} is not invertible modulo {p}")
    return pow(a, p - 2, p)


def binomial_exact(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial arguments must be >= 0, got ({n}, {k})")
    if k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def _pascal_mod(p: int) -> tuple[tuple[int, ...], ...]:
    # C(i, j) mod p for 0 <= j <= i < p
    rows = [[1]]
    for i in range(1, p):
        prev = rows[-1]
        rows.append([1] + [(prev[j - 1] + prev[j]) % p for j in range(1, i)] + [1])
    return tuple(tuple(row) for row in rows)


def binomial_mod_lucas(n: int, m: int, p) -> int:
    """C(n, m) mod p as the digitwise product of base-p digit binomials."""
    p = int(Prime(p))
    if n < 0 or m < 0:
        raise ValueError(f"binomial arguments must be >= 0, got ({n}, {m})")
    table = _pascal_mod(p)
    r = 1
    while n or m:
        nd = n % p
        md = m % p
        if md > nd:
            return 0
        r = r * table[nd][md] % p
        n //= p
        m //= p
    return r
