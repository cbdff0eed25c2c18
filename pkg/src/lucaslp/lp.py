"""Brute-force digit-product oracle and the fast criteria it cross-validates.

A sequence S has the Lucas property with prime p when S(n) is congruent mod p
to the product of S over the little-endian base-p digits of n, for every n.
The oracle here checks that congruence literally for every n below
p**digit_bound and reports the smallest violation. Closed-form criteria
(divisibility conditions on the recurrence data) are evaluated separately,
and cross-validation compares both routes cell by cell instead of trusting
either one.

A sequence that vanishes identically mod p satisfies the congruence
vacuously. Those cells say nothing about the criteria, so sweeps flag them
and keep them out of both the disagreement count and the valid-b sets.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice

from .modmath import Prime, digits_base_p, is_prime
from .sequences import (
    FIBONACCI,
    LUCAS_NUMBERS,
    PELL,
    LinearRecurrence,
    PeriodInfo,
    fib_mod,
    lucas_mod,
    s_poly,
    term_table_mod,
)
from .special import apery_mod, omega_mod

__all__ = [
    "AS_PROVED",
    "AS_STATED",
    "TableTooShortError",
    "NotFoundWithinBoundError",
    "AffineIndexMap",
    "SequenceSpec",
    "FibAffine",
    "LucasAffine",
    "GeneralAffine",
    "PowerSequence",
    "AperySequence",
    "OmegaSequence",
    "TableSequence",
    "fib_affine",
    "lucas_affine",
    "general_affine",
    "Counterexample",
    "LPVerdict",
    "lp_bruteforce",
    "sequence_is_zero_mod",
    "lemma1_check",
    "lemma2_check",
    "lemma3_closed_form",
    "theorem1_condition",
    "theorem2_condition",
    "theorem3_condition",
    "BEnumeration",
    "enumerate_valid_b",
    "corollary1_counterexample",
    "GridCell",
    "AgreementReport",
    "crossval_theorem1",
    "crossval_theorem2",
    "crossval_theorem3",
    "THEOREM3_DEFAULT_RECS",
    "resolve_workers",
]

AS_PROVED = "as-proved"
AS_STATED = "as-stated"


class TableTooShortError(ValueError):
    """Raised when a fixed value table cannot cover the requested scan."""


class NotFoundWithinBoundError(RuntimeError):
    """Raised when no prime below the bound produces a counterexample."""


@dataclass(frozen=True)
class AffineIndexMap:
    """The index map n -> a*n + b with a >= 1, b >= 0."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"stride a must be >= 1, got {self.a}")
        if self.b < 0:
            raise ValueError(f"offset b must be >= 0, got {self.b}")


# ---------------------------------------------------------------------------
# sequence specifications the oracle can sample


class SequenceSpec:
    """A concrete integer sequence, sampled mod p by the oracle."""

    variant = "abstract"

    def iter_residues(self, p, count: int):
        """Yield S(0) mod p, ..., S(count-1) mod p."""
        raise NotImplementedError

    def residues(self, p, count: int) -> list[int]:
        return list(self.iter_residues(p, count))

    def describe(self) -> dict:
        """Flat, JSON-friendly description of the sequence, used in reports."""
        raise NotImplementedError


@lru_cache(maxsize=None)
def _cached_term_table(rec: LinearRecurrence, p: int):
    info, terms = term_table_mod(rec, p)
    return info, tuple(terms)


def _affine_residues(rec: LinearRecurrence, index_map: AffineIndexMap, p: int, count: int):
    info, terms = _cached_term_table(rec, p)
    pre, per = info
    top = pre + per
    idx = index_map.b
    for _ in range(count):
        if idx < top:
            yield terms[idx]
        else:
            yield terms[pre + (idx - pre) % per]
        idx += index_map.a


@dataclass(frozen=True)
class FibAffine(SequenceSpec):
    """S(n) = F(a*n + b)."""

    index_map: AffineIndexMap
    variant = "fib-affine"

    rec = FIBONACCI

    def iter_residues(self, p, count):
        return _affine_residues(self.rec, self.index_map, int(Prime(p)), count)

    def describe(self):
        return {"variant": self.variant, "a": self.index_map.a, "b": self.index_map.b}


@dataclass(frozen=True)
class LucasAffine(SequenceSpec):
    """S(n) = L(a*n + b)."""

    index_map: AffineIndexMap
    variant = "lucas-affine"

    rec = LUCAS_NUMBERS

    def iter_residues(self, p, count):
        return _affine_residues(self.rec, self.index_map, int(Prime(p)), count)

    def describe(self):
        return {"variant": self.variant, "a": self.index_map.a, "b": self.index_map.b}


@dataclass(frozen=True)
class GeneralAffine(SequenceSpec):
    """S(n) = A(a*n + b) for a caller-supplied recurrence."""

    rec: LinearRecurrence
    index_map: AffineIndexMap
    variant = "general-affine"

    def iter_residues(self, p, count):
        return _affine_residues(self.rec, self.index_map, int(Prime(p)), count)

    def describe(self):
        return {
            "variant": self.variant,
            "rec": self.rec.as_string(),
            "a": self.index_map.a,
            "b": self.index_map.b,
        }


@dataclass(frozen=True)
class PowerSequence(SequenceSpec):
    """S(n) = base**n, the multiplicative reference case (always LP)."""

    base: int
    variant = "power"

    def iter_residues(self, p, count):
        p = int(Prime(p))
        r = 1 % p
        b = self.base % p
        for _ in range(count):
            yield r
            r = r * b % p

    def describe(self):
        return {"variant": self.variant, "base": self.base}


@dataclass(frozen=True)
class AperySequence(SequenceSpec):
    """S(n) = the nth Apery number."""

    variant = "apery"

    def iter_residues(self, p, count):
        p = Prime(p)
        for n in range(count):
            yield apery_mod(n, p)

    def describe(self):
        return {"variant": self.variant}


@dataclass(frozen=True)
class OmegaSequence(SequenceSpec):
    """S(n) = the nth reciprocal-Bessel coefficient."""

    variant = "omega"

    def iter_residues(self, p, count):
        p = Prime(p)
        for n in range(count):
            yield omega_mod(n, p)

    def describe(self):
        return {"variant": self.variant}


@dataclass(frozen=True)
class TableSequence(SequenceSpec):
    """S given by an explicit value table S(0), S(1), ..."""

    values: tuple[int, ...]
    variant = "table"

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("value table must be non-empty")

    def iter_residues(self, p, count):
        if len(self.values) < count:
            raise TableTooShortError(
                f"table holds {len(self.values)} values but the scan needs {count}"
            )
        p = int(Prime(p))
        for value in islice(self.values, count):
            yield value % p

    def describe(self):
        return {"variant": self.variant, "length": len(self.values)}


def fib_affine(a: int, b: int) -> FibAffine:
    return FibAffine(AffineIndexMap(a, b))


def lucas_affine(a: int, b: int) -> LucasAffine:
    return LucasAffine(AffineIndexMap(a, b))


def general_affine(rec: LinearRecurrence, a: int, b: int) -> GeneralAffine:
    return GeneralAffine(rec, AffineIndexMap(a, b))


# ---------------------------------------------------------------------------
# the oracle


@dataclass(frozen=True)
class Counterexample:
    """A witness n with S(n) = lhs but digit product rhs, lhs != rhs mod p."""

    n: int
    lhs: int
    digits: tuple[int, ...]
    rhs: int

    def to_dict(self) -> dict:
        return {"n": self.n, "lhs": self.lhs, "digits": list(self.digits), "rhs": self.rhs}


@dataclass(frozen=True)
class LPVerdict:
    """Outcome of one brute-force scan."""

    holds: bool
    prime: int
    digit_bound: int
    counterexample: Counterexample | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.counterexample is None):
            raise ValueError("holds must be equivalent to the absence of a counterexample")

    def to_dict(self) -> dict:
        d = {"holds": self.holds, "prime": int(self.prime), "digit_bound": self.digit_bound}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample.to_dict()
        return d


def lp_bruteforce(spec: SequenceSpec, p, digit_bound: int = 3) -> LPVerdict:
    """Scan every n < p**digit_bound for the digit-product congruence.

    Digit products are built up dynamically: the product for n reuses the
    product for n // p, so the whole scan is linear in the number of indices
    checked. The scan stops at the first (hence smallest) violating n.
    Single-digit n satisfy the congruence identically, so digit_bound must
    be at least 2 for the scan to say anything.
    """
    p = Prime(p)
    if digit_bound < 2:
        raise ValueError(f"digit_bound must be >= 2, got {digit_bound}")
    pi = int(p)
    count = pi**digit_bound
    it = spec.iter_residues(p, count)
    head = list(islice(it, pi))
    prods = list(head)
    append = prods.append
    n = pi
    for lhs in it:
        rhs = prods[n // pi] * head[n % pi] % pi
        if lhs != rhs:
            return LPVerdict(
                False, p, digit_bound, Counterexample(n, lhs, digits_base_p(n, p).digits, rhs)
            )
        append(rhs)
        n += 1
    return LPVerdict(True, p, digit_bound)


def sequence_is_zero_mod(spec: SequenceSpec, p, digit_bound: int = 3) -> bool:
    """True when S(n) is 0 mod p for every n the oracle would scan.

    Such a sequence passes the oracle vacuously; callers use this to flag
    those passes instead of counting them as evidence.
    """
    p = Prime(p)
    return all(r == 0 for r in spec.iter_residues(p, int(p) ** digit_bound))


# ---------------------------------------------------------------------------
# lemma-level checks and closed-form criteria


def lemma1_check(spec: SequenceSpec, p, scan: int | None = None):
    """Necessary condition S(0) = 1 mod p; None when S is identically zero.

    Scans S on [0, scan) (default p**3). An identically-zero sequence
    satisfies the congruence vacuously without S(0) = 1, so it gets the
    separate inapplicable answer None rather than True or False.
    """
    p = Prime(p)
    if scan is None:
        scan = int(p) ** 3
    if scan < 1:
        raise ValueError(f"scan must be >= 1, got {scan}")
    it = spec.iter_residues(p, scan)
    first = next(it)
    if first != 0:
        return first == 1
    if all(r == 0 for r in it):
        return None
    return False


def lemma2_check(spec: SequenceSpec, p, n_bound: int) -> bool:
    """Check the geometric form S(n) = S(1)**n mod p for all n < n_bound."""
    p = Prime(p)
    if n_bound < 1:
        raise ValueError(f"n_bound must be >= 1, got {n_bound}")
    pi = int(p)
    it = spec.iter_residues(p, n_bound)
    vals = list(it)
    s1 = vals[1] if len(vals) > 1 else 1
    expected = 1 % pi
    for v in vals:
        if v != expected:
            return False
        expected = expected * s1 % pi
    return True


def lemma3_closed_form(kind: str, n: int) -> int:
    """Mod-5 closed forms: F(n) = n*3**(n-1), L(n) = 3**(n-1), for n >= 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    power = pow(3, n - 1, 5)
    if kind == "fib":
        return n * power % 5
    if kind == "lucas":
        return power
    raise ValueError(f"kind must be 'fib' or 'lucas', got {kind!r}")


def theorem1_condition(index_map: AffineIndexMap, p) -> bool:
    """F(a) = 0 and F(b) = 1 mod p: the criterion for S(n) = F(a*n + b)."""
    p = Prime(p)
    return fib_mod(index_map.a, p) == 0 and fib_mod(index_map.b, p) == 1


def theorem2_condition(index_map: AffineIndexMap, p, reading: str = AS_PROVED) -> bool:
    """Criterion for S(n) = L(a*n + b): 5F(a) = 0 mod p plus a seed clause.

    The two readings differ in the seed clause: as-proved requires
    L(b) = 1 mod p, as-stated requires F(b) = 1 mod p. The as-stated form
    is refutable by brute force (see the cross-validation sweeps), so
    as-proved is the default.
    """
    p = Prime(p)
    if reading not in (AS_PROVED, AS_STATED):
        raise ValueError(f"reading must be {AS_PROVED!r} or {AS_STATED!r}, got {reading!r}")
    if 5 * fib_mod(index_map.a, p) % int(p) != 0:
        return False
    if reading == AS_PROVED:
        return lucas_mod(index_map.b, p) == 1
    return fib_mod(index_map.b, p) == 1


def theorem3_condition(rec: LinearRecurrence, index_map: AffineIndexMap, p) -> bool:
    """Criterion for S(n) = A(a*n + b):

    v * s(a-1) * (v A0^2 + u A0 A1 - A1^2) = 0 mod p  and  A(b) = 1 mod p.
    """
    p = Prime(p)
    first = rec.v * s_poly(index_map.a - 1, rec.u, rec.v) * rec.seed_discriminant()
    if first % int(p) != 0:
        return False
    return _affine_term(rec, index_map.b, int(p)) == 1


def _affine_term(rec: LinearRecurrence, idx: int, p: int) -> int:
    info, terms = _cached_term_table(rec, p)
    pre, per = info
    if idx < pre + per:
        return terms[idx]
    return terms[pre + (idx - pre) % per]


# ---------------------------------------------------------------------------
# enumeration of valid offsets


@dataclass(frozen=True)
class BEnumeration:
    """Offsets b (mod the sequence period) that pass the oracle for fixed a."""

    family: str
    a: int
    prime: int
    digit_bound: int
    preperiod: int
    modulus: int
    valid_b: tuple[int, ...]
    predicted_b: tuple[int, ...]
    identically_zero_b: tuple[int, ...]
    rec: LinearRecurrence | None = None

    @property
    def matches_prediction(self) -> bool:
        return self.valid_b == self.predicted_b


def _family_tools(family: str, rec: LinearRecurrence | None):
    if family == "fib":
        return FIBONACCI, (lambda r, m, p: theorem1_condition(m, p))
    if family == "lucas":
        return LUCAS_NUMBERS, (lambda r, m, p: theorem2_condition(m, p))
    if family == "general":
        if rec is None:
            raise ValueError("family 'general' needs an explicit recurrence")
        return rec, theorem3_condition
    raise ValueError(f"family must be 'fib', 'lucas' or 'general', got {family!r}")


def enumerate_valid_b(
    family: str,
    a: int,
    p,
    digit_bound: int = 3,
    rec: LinearRecurrence | None = None,
) -> BEnumeration:
    """All offsets b with S(n) = A(a*n + b) passing the oracle mod p.

    b runs over [0, preperiod + period) of the underlying sequence mod p,
    which covers every distinct residue behaviour; beyond the preperiod,
    offsets repeat with the period, reported as `modulus`. Identically-zero
    offsets (vacuous passes) are listed separately and excluded from
    valid_b. predicted_b holds the offsets the closed-form criterion
    accepts, for side-by-side comparison.
    """
    p = Prime(p)
    base_rec, condition = _family_tools(family, rec)
    if a < 1:
        raise ValueError(f"stride a must be >= 1, got {a}")
    info, _ = _cached_term_table(base_rec, int(p))
    valid, zero, predicted = [], [], []
    for b in range(info.preperiod + info.period):
        index_map = AffineIndexMap(a, b)
        spec = GeneralAffine(base_rec, index_map)
        verdict = lp_bruteforce(spec, p, digit_bound)
        if verdict.holds:
            if sequence_is_zero_mod(spec, p, digit_bound):
                zero.append(b)
            else:
                valid.append(b)
        if condition(base_rec, index_map, p):
            predicted.append(b)
    return BEnumeration(
        family=family,
        a=a,
        prime=int(p),
        digit_bound=digit_bound,
        preperiod=info.preperiod,
        modulus=info.period,
        valid_b=tuple(valid),
        predicted_b=tuple(predicted),
        identically_zero_b=tuple(zero),
        rec=base_rec if family == "general" else None,
    )


def corollary1_counterexample(
    index_map: AffineIndexMap,
    prime_bound: int = 50,
    family: str = "fib",
    digit_bound: int = 3,
):
    """Smallest prime <= prime_bound where S(n) fails the oracle, with witness.

    For a, b >= 1 no affine Fibonacci or Lucas subsequence has the property
    for every prime, so some prime should fail; primes are tried in
    increasing order and the first failing one is returned as
    (prime, verdict). Raises NotFoundWithinBoundError when every prime up
    to the bound passes.
    """
    if index_map.b < 1:
        raise ValueError(f"offset b must be >= 1 here, got {index_map.b}")
    if family == "fib":
        make = fib_affine
    elif family == "lucas":
        make = lucas_affine
    else:
        raise ValueError(f"family must be 'fib' or 'lucas', got {family!r}")
    for q in range(2, prime_bound + 1):
        if not is_prime(q):
            continue
        verdict = lp_bruteforce(make(index_map.a, index_map.b), q, digit_bound)
        if not verdict.holds:
            return Prime(q), verdict
    raise NotFoundWithinBoundError(
        f"no failing prime <= {prime_bound} for a={index_map.a}, b={index_map.b}"
    )


# ---------------------------------------------------------------------------
# cross-validation sweeps


@dataclass(frozen=True)
class GridCell:
    """One (prime, a, b) comparison of criterion vs oracle."""

    prime: int
    a: int
    b: int
    predicted: bool
    oracle_holds: bool
    identically_zero: bool
    rec: LinearRecurrence | None = None
    counterexample: Counterexample | None = None

    @property
    def disagrees(self) -> bool:
        return not self.identically_zero and self.predicted != self.oracle_holds


@dataclass(frozen=True)
class AgreementReport:
    """Outcome of a full criterion-vs-oracle sweep."""

    theorem: int
    reading: str | None
    digit_bound: int
    cells: tuple[GridCell, ...]

    @property
    def disagreements(self) -> tuple[GridCell, ...]:
        return tuple(c for c in self.cells if c.disagrees)

    @property
    def identically_zero_cells(self) -> tuple[GridCell, ...]:
        return tuple(c for c in self.cells if c.identically_zero)


THEOREM3_DEFAULT_RECS = (
    FIBONACCI,
    LUCAS_NUMBERS,
    PELL,
    LinearRecurrence(1, 2, 1, 1),
    LinearRecurrence(2, 1, 3, 2),
)


def resolve_workers(tasks: int) -> int:
    """Worker count from LUCASLP_THREADS; 0 or unset means one per CPU."""
    raw = os.environ.get("LUCASLP_THREADS", "").strip()
    if raw == "":
        n = os.cpu_count() or 1
    else:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(
                f"LUCASLP_THREADS must be a nonnegative integer, got {raw!r}"
            ) from None
        if n < 0:
            raise ValueError(f"LUCASLP_THREADS must be >= 0, got {n}")
        if n == 0:
            n = os.cpu_count() or 1
    return max(1, min(n, tasks))


def _sweep_cells(task) -> list[GridCell]:
    theorem, rec, p, a_values, b_values, digit_bound, reading = task
    p = Prime(p)
    cells = []
    for a in a_values:
        for b in b_values:
            index_map = AffineIndexMap(a, b)
            if theorem == 1:
                spec = FibAffine(index_map)
                predicted = theorem1_condition(index_map, p)
            elif theorem == 2:
                spec = LucasAffine(index_map)
                predicted = theorem2_condition(index_map, p, reading)
            else:
                spec = GeneralAffine(rec, index_map)
                predicted = theorem3_condition(rec, index_map, p)
            verdict = lp_bruteforce(spec, p, digit_bound)
            zero = verdict.holds and sequence_is_zero_mod(spec, p, digit_bound)
            cells.append(
                GridCell(
                    prime=int(p),
                    a=a,
                    b=b,
                    predicted=predicted,
                    oracle_holds=verdict.holds,
                    identically_zero=zero,
                    rec=rec,
                    counterexample=verdict.counterexample,
                )
            )
    return cells


def _run_tasks(tasks: list) -> list[list[GridCell]]:
    workers = resolve_workers(len(tasks))
    if workers <= 1 or len(tasks) <= 1:
        return [_sweep_cells(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # pool.map preserves task order, keeping reports deterministic
        return list(pool.map(_sweep_cells, tasks))


def crossval_theorem1(primes, a_values, b_values, digit_bound: int = 3) -> AgreementReport:
    """Sweep the Fibonacci affine criterion against the oracle."""
    a_values, b_values = tuple(a_values), tuple(b_values)
    tasks = [(1, None, int(Prime(p)), a_values, b_values, digit_bound, None) for p in primes]
    chunks = _run_tasks(tasks)
    return AgreementReport(1, None, digit_bound, tuple(c for chunk in chunks for c in chunk))


def crossval_theorem2(
    primes, a_values, b_values, reading: str = AS_PROVED, digit_bound: int = 3
) -> AgreementReport:
    """Sweep the Lucas affine criterion (either reading) against the oracle."""
    if reading not in (AS_PROVED, AS_STATED):
        raise ValueError(f"reading must be {AS_PROVED!r} or {AS_STATED!r}, got {reading!r}")
    a_values, b_values = tuple(a_values), tuple(b_values)
    tasks = [(2, None, int(Prime(p)), a_values, b_values, digit_bound, reading) for p in primes]
    chunks = _run_tasks(tasks)
    return AgreementReport(2, reading, digit_bound, tuple(c for chunk in chunks for c in chunk))


def crossval_theorem3(
    recs, primes, a_values, b_values, digit_bound: int = 3
) -> AgreementReport:
    """Sweep the general affine criterion against the oracle, per recurrence."""
    a_values, b_values = tuple(a_values), tuple(b_values)
    tasks = [
        (3, rec, int(Prime(p)), a_values, b_values, digit_bound, None)
        for rec in recs
        for p in primes
    ]
    chunks = _run_tasks(tasks)
    return AgreementReport(3, None, digit_bound, tuple(c for chunk in chunks for c in chunk))
