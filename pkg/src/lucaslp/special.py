"""Apery numbers and the reciprocal-Bessel coefficients, exact and mod p.

Both sequences are defined through binomial sums, so their residues mod p
come from Lucas-theorem binomials rather than from reducing huge integers.
"""

from __future__ import annotations

from functools import lru_cache

from .modmath import Prime, binomial_exact, binomial_mod_lucas

__all__ = ["omega", "omega_mod", "apery", "apery_mod"]

# Prefix tables for the convolution recurrence. Growth happens on a local
# copy that replaces the shared reference afterwards, so concurrent readers
# always see a complete table.
_omega_table: list[int] = [1]
_omega_mod_tables: dict[int, list[int]] = {}


def omega(n: int) -> int:
    """Coefficient w(n) of the reciprocal Bessel-type series, exactly.

    Defined by w(0) = 1 and the convolution
    sum over k of (-1)^k C(n, k)^2 w(n-k) = 0 for n >= 1.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    table = _omega_table
    if n < len(table):
        return table[n]
    table = list(table)
    while len(table) <= n:
        m = len(table)
        table.append(
            sum(
                (-1) ** (k + 1) * binomial_exact(m, k) ** 2 * table[m - k]
                for k in range(1, m + 1)
            )
        )
    globals()["_omega_table"] = table
    return table[n]


def omega_mod(n: int, p) -> int:
    """w(n) mod p from the same convolution with digitwise binomials."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    p = int(Prime(p))
    table = _omega_mod_tables.get(p, [1 % p])
    if n < len(table):
        return table[n]
    table = list(table)
    while len(table) <= n:
        m = len(table)
        acc = 0
        for k in range(1, m + 1):
            c = binomial_mod_lucas(m, k, p)
            if c == 0:
                continue
            term = c * c % p * table[m - k] % p
            acc = acc + term if k % 2 else acc - term
        table.append(acc % p)
    _omega_mod_tables[p] = table
    return table[n]


@lru_cache(maxsize=None)
def apery(n: int) -> int:
    """Apery number: sum over k of C(n, k)^2 C(n+k, k)^2."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return sum(
        binomial_exact(n, k) ** 2 * binomial_exact(n + k, k) ** 2
        for k in range(n + 1)
    )


def apery_mod(n: int, p) -> int:
    """Apery number mod p, termwise from Lucas-theorem binomials."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    p = int(Prime(p))
    acc = 0
    for k in range(n + 1):
        a = binomial_mod_lucas(n, k, p)
        if a == 0:
            continue
        b = binomial_mod_lucas(n + k, k, p)
        acc = (acc + a * a * b * b) % p
    return acc
