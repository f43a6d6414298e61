"""Primality verdicts, the indicator delta, and neighbor-prime helpers.

Every claim check in the package funnels through `delta`, so this module is
deliberately self-contained and fast for the small-to-medium integers that
dominate the workload, while staying correct for the ~100-digit record
values produced by the acceleration formulas.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

PRIME = "prime"
PROBABLE_PRIME = "probable-prime"
COMPOSITE = "composite"

# Strong-pseudoprime testing with the first 13 primes as witnesses is
# deterministic below this bound (Sorenson & Webster).
DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

_SMALL_SIEVE_LIMIT = 1 << 20


@dataclass(frozen=True)
class PrimalityPolicy:
    """How to decide primality: deterministic witnesses below a bound,
    seeded random strong-pseudoprime rounds above it."""

    rounds: int = 40
    deterministic_bound: int = DETERMINISTIC_BOUND
    rng_seed: int = 0x5EED_CAFE

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if self.deterministic_bound < 2:
            raise ValueError("deterministic_bound must be >= 2")


@dataclass(frozen=True)
class PrimalityVerdict:
    kind: str
    error_bound: Fraction = Fraction(0)

    def __bool__(self) -> bool:
        return self.kind in (PRIME, PROBABLE_PRIME)


DEFAULT_POLICY = PrimalityPolicy()

# Smallest sets of witnesses that make the strong test deterministic up to
# the paired bound (classical tables; the last row is the 13-prime set).
_WITNESS_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1662803)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (DETERMINISTIC_BOUND, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_TRIAL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_sieve: bytearray | None = None


def _small_sieve() -> bytearray:
    """Lazy 0/1 primality table below _SMALL_SIEVE_LIMIT (read-only once built)."""
    global _sieve
    if _sieve is None:
        n = _SMALL_SIEVE_LIMIT
        s = bytearray([1]) * n
        s[0] = s[1] = 0
        for p in range(2, int(n**0.5) + 1):
            if s[p]:
                s[p * p :: p] = bytearray(len(range(p * p, n, p)))
        _sieve = s
    return _sieve


def _strong_test(n: int, base: int, d: int, s: int) -> bool:
    """True if n passes the strong (Miller-Rabin) test to the given base."""
    base %= n
    if base in (0, 1, n - 1):
        return True
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
        if x == 1:
            return False
    return False


def is_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> PrimalityVerdict:
    """Primality verdict under the policy.

    Deterministic for n below policy.deterministic_bound; above it, runs
    `policy.rounds` seeded random strong tests and reports ProbablePrime
    with error bound 4**(-rounds).
    """
    if n < 2:
        return PrimalityVerdict(COMPOSITE)
    if n < _SMALL_SIEVE_LIMIT:
        return PrimalityVerdict(PRIME if _small_sieve()[n] else COMPOSITE)
    for p in _TRIAL_PRIMES:
        if n % p == 0:
            return PrimalityVerdict(COMPOSITE if n != p else PRIME)
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < policy.deterministic_bound and n < DETERMINISTIC_BOUND:
        for bound, witnesses in _WITNESS_TIERS:
            if n < bound:
                break
        for a in witnesses:
            if not _strong_test(n, a, d, s):
                return PrimalityVerdict(COMPOSITE)
        return PrimalityVerdict(PRIME)
    rng = random.Random(policy.rng_seed ^ (n & ((1 << 64) - 1)))
    for _ in range(policy.rounds):
        a = rng.randrange(2, n - 1)
        if not _strong_test(n, a, d, s):
            return PrimalityVerdict(COMPOSITE)
    return PrimalityVerdict(PROBABLE_PRIME, Fraction(1, 4**policy.rounds))


def delta(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> int:
    """Prime indicator: 1 on (probable) primes, 0 otherwise."""
    return 1 if is_prime(n, policy) else 0


def all_prime(values, policy: PrimalityPolicy = DEFAULT_POLICY) -> int:
    """Product of delta over a non-empty list of values."""
    values = list(values)
    if not values:
        raise ValueError("all_prime requires at least one value")
    out = 1
    for v in values:
        out &= delta(v, policy)
        if not out:
            break
    return out


def prev_prime(n: int, policy: PrimalityPolicy = DEFAULT_POLICY) -> int:
    """Largest prime <= n (n >= 3)."""
    if n < 3:
        raise ValueError("prev_prime requires n >= 3")
    if n == 3:
        return 3
    c = n if n % 2 else n - 1
    while c >= 3:
        if delta(c, policy):
            return c
        c -= 2
    return 2  # unreachable for n >= 3, kept for safety
