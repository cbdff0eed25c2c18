"""Fibonacci, Lucas, and general second-order recurrences, exact and mod p.

Exact values use fast doubling (Fibonacci/Lucas) or plain iteration; modular
values of huge-index terms go through 2x2 companion-matrix exponentiation.
Residue sequences mod p are ultimately periodic in the state pair, so a
finite term table plus (preperiod, period) determines every term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .modmath import Prime, binomial_exact

__all__ = [
    "ScanExhaustedError",
    "LinearRecurrence",
    "FIBONACCI",
    "LUCAS_NUMBERS",
    "PELL",
    "PeriodInfo",
    "fib",
    "lucas_num",
    "fib_mod",
    "lucas_mod",
    "rec_term",
    "s_poly",
    "t_poly",
    "period_mod",
    "term_table_mod",
    "alpha",
]


class ScanExhaustedError(RuntimeError):
    """Raised when a bounded scan ends before finding its target."""


@dataclass(frozen=True)
class LinearRecurrence:
    """Integer recurrence A(n) = u*A(n-1) + v*A(n-2) with seeds A(0), A(1)."""

    a0: int
    a1: int
    u: int
    v: int

    @classmethod
    def from_string(cls, text: str) -> "LinearRecurrence":
        """Parse the wire format 'A0,A1,u,v' (four signed integers)."""
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected 'A0,A1,u,v', got {text!r}")
        try:
            a0, a1, u, v = (int(part) for part in parts)
        except ValueError as exc:
            raise ValueError(f"expected 'A0,A1,u,v', got {text!r}") from exc
        return cls(a0, a1, u, v)

    def as_string(self) -> str:
        return f"{self.a0},{self.a1},{self.u},{self.v}"

    def seed_discriminant(self) -> int:
        """The seed-dependent factor v*A(0)^2 + u*A(0)A(1) - A(1)^2.

        It multiplies the closed-form term in the Catalan-type identity and
        controls the first clause of the general affine-index criterion.
        """
        return self.v * self.a0**2 + self.u * self.a0 * self.a1 - self.a1**2


FIBONACCI = LinearRecurrence(0, 1, 1, 1)
LUCAS_NUMBERS = LinearRecurrence(2, 1, 1, 1)
PELL = LinearRecurrence(0, 1, 2, 1)


class PeriodInfo(NamedTuple):
    preperiod: int
    period: int


def _fib_pair(n: int) -> tuple[int, int]:
    # (F(n), F(n+1)) by index doubling: F(2k) = F(k)(2F(k+1) - F(k)),
    # F(2k+1) = F(k)^2 + F(k+1)^2
    a, b = 0, 1
    for i in range(n.bit_length() - 1, -1, -1):
        c = a * (2 * b - a)
        d = a * a + b * b
        if (n >> i) & 1:
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib(n: int) -> int:
    """F(n) exactly, with F(0) = 0, F(1) = 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _fib_pair(n)[0]


def lucas_num(n: int) -> int:
    """L(n) exactly, with L(0) = 2, L(1) = 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a, b = _fib_pair(n)
    return 2 * b - a


def _fib_pair_mod(n: int, p: int) -> tuple[int, int]:
    a, b = 0, 1 % p
    for i in range(n.bit_length() - 1, -1, -1):
        c = a * (2 * b - a) % p
        d = (a * a + b * b) % p
        if (n >> i) & 1:
            a, b = d, (c + d) % p
        else:
            a, b = c, d
    return a, b


def fib_mod(n: int, p) -> int:
    """F(n) mod p in O(log n) multiplications."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _fib_pair_mod(n, int(Prime(p)))[0]


def lucas_mod(n: int, p) -> int:
    """L(n) mod p in O(log n) multiplications, via L(n) = 2F(n+1) - F(n)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    p = int(Prime(p))
    a, b = _fib_pair_mod(n, p)
    return (2 * b - a) % p


def _mat_mul_mod(x, y, p):
    return (
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    )


def _mat_pow_mod(m, e, p):
    r = (1 % p, 0, 0, 1 % p)
    while e:
        if e & 1:
            r = _mat_mul_mod(r, m, p)
        m = _mat_mul_mod(m, m, p)
        e >>= 1
    return r


@lru_cache(maxsize=None)
def rec_term(rec: LinearRecurrence, n: int, modulus=None) -> int:
    """A(n) for the recurrence, exact (modulus None) or reduced mod a prime.

    The modular path powers the companion matrix [[u, v], [1, 0]], so huge
    indices stay cheap; the exact path iterates. Results are memoized, which
    makes dense sweeps over overlapping indices effectively table lookups.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if modulus is None:
        a, b = rec.a0, rec.a1
        if n == 0:
            return a
        for _ in range(n - 1):
            a, b = b, rec.u * b + rec.v * a
        return b
    p = int(Prime(modulus))
    m = _mat_pow_mod((rec.u % p, rec.v % p, 1 % p, 0), n, p)
    # M^n (A1, A0)^T = (A(n+1), A(n))^T, so A(n) is the bottom row applied
    return (m[2] * rec.a1 + m[3] * rec.a0) % p


@lru_cache(maxsize=None)
def s_poly(k: int, u: int, v: int) -> int:
    """Shift coefficient s(k) = sum over i of C(k-i, i) u^(k-2i) v^i."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return sum(
        binomial_exact(k - i, i) * u ** (k - 2 * i) * v**i
        for i in range(k // 2 + 1)
    )


@lru_cache(maxsize=None)
def t_poly(k: int, u: int, v: int) -> int:
    """Shift coefficient t(k) = sum over j of C(k-1-j, j) u^(k-1-2j) v^(j+1).

    The empty sum gives t(0) = 0, the convention that makes the two-term
    shift identity hold at k = 0.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return 0
    return sum(
        binomial_exact(k - 1 - j, j) * u ** (k - 1 - 2 * j) * v ** (j + 1)
        for j in range((k - 1) // 2 + 1)
    )


def _scan_states(rec: LinearRecurrence, p: int, scan_limit: int):
    # First-occurrence scan of the state pair (A(n), A(n+1)) mod p.
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    state = (rec.a0 % p, rec.a1 % p)
    u, v = rec.u % p, rec.v % p
    for t in range(scan_limit + 1):
        if state in seen:
            start = seen[state]
            return start, t - start, terms
        seen[state] = t
        terms.append(state[0])
        state = (state[1], (u * state[1] + v * state[0]) % p)
    raise ScanExhaustedError(
        f"state pair of {rec.as_string()} mod {p} did not repeat within {scan_limit} steps"
    )


def period_mod(rec: LinearRecurrence, p, scan_limit: int | None = None) -> PeriodInfo:
    """Minimal (preperiod, period) of A(n) mod p as a state-pair sequence.

    The state space has p**2 elements, so the default scan limit p**2 + 1
    always suffices; a smaller explicit limit may raise ScanExhaustedError.
    """
    p = int(Prime(p))
    if scan_limit is None:
        scan_limit = p * p + 1
    start, length, _ = _scan_states(rec, p, scan_limit)
    return PeriodInfo(start, length)


def term_table_mod(rec: LinearRecurrence, p, scan_limit: int | None = None):
    """(PeriodInfo, terms) with terms = [A(0) mod p, ..., A(pre+per-1) mod p].

    Together these determine A(n) mod p for every n: indices past the
    preperiod fold down with period per.
    """
    p = int(Prime(p))
    if scan_limit is None:
        scan_limit = p * p + 1
    start, length, terms = _scan_states(rec, p, scan_limit)
    return PeriodInfo(start, length), terms


def alpha(p, scan_limit: int | None = None) -> int:
    """Rank of apparition: least n >= 1 with F(n) divisible by p."""
    p = int(Prime(p))
    if scan_limit is None:
        # the rank divides the Pisano period, which is at most 6p
        scan_limit = 6 * p + 1
    a, b = 0, 1 % p
    for n in range(1, scan_limit + 1):
        a, b = b, (a + b) % p
        if a == 0:
            return n
    raise ScanExhaustedError(f"no zero of F mod {p} within {scan_limit} terms")
