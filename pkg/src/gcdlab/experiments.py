"""Experiment harness: reference tables, threshold scans, and the
statistical series (upsilon estimators, Goldbach constant, gap diagnostics,
Legendre variation counts)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from multiprocessing import Pool

from . import engine, primality
from .engine import RunConfig, SIGNED_BACKWARD
from .generators import (
    AffineMinus,
    AlternatingLinear,
    AlternatingQuad,
    BeattyTwin,
    FactoredPolynomial,
    GoldbachAlt,
    GoldbachProduct,
    PeriodicAffine,
    Polynomial,
    PowerMinus,
    PrimePowerMinusOne,
    QuadShift,
    ShiftedIndex,
    TripletProduct,
    parse_spec,
)

TABLE_BUDGET = 2 * 10**9


@dataclass
class ExperimentReport:
    spec: str
    initial: int
    budget: int
    rows: list = field(default_factory=list)  # (index, claims, deltas, all_prime)
    budget_exhausted: bool = False

    def to_csv(self) -> str:
        width = max((len(r[1]) for r in self.rows), default=1)
        head = (
            ["index"]
            + [f"claim_{j + 1}" for j in range(width)]
            + [f"delta_{j + 1}" for j in range(width)]
            + ["all_prime"]
        )
        lines = [",".join(head)]
        for idx, claims, deltas, ap in self.rows:
            claims = list(claims) + [""] * (width - len(claims))
            deltas = list(deltas) + [""] * (width - len(deltas))
            lines.append(
                ",".join([str(idx)] + [str(c) for c in claims] + [str(d) for d in deltas] + [str(ap)])
            )
        return "\n".join(lines) + "\n"


@dataclass
class ThresholdScanReport:
    family: str
    n_lo: int
    n_hi: int
    failing_N: list
    largest_failure: int | None

    def to_csv(self) -> str:
        lines = ["N,failed"]
        failing = set(self.failing_N)
        for n in range(self.n_lo, self.n_hi + 1):
            lines.append(f"{n},{1 if n in failing else 0}")
        return "\n".join(lines) + "\n"


def series_to_csv(series) -> str:
    lines = ["x,y"]
    for x, y in series:
        lines.append(f"{x},{y}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generic claims table


def claims_report(
    spec,
    initial: int,
    rows: int,
    mode: str = engine.ABS_BACKWARD,
    start_index: int = 1,
    budget: int = TABLE_BUDGET,
    policy: primality.PrimalityPolicy = primality.DEFAULT_POLICY,
) -> ExperimentReport:
    """Run to the first `rows` zeros and report each zero's claim list."""
    cfg = RunConfig(
        initial=initial,
        arg=spec,
        mode=mode,
        start_index=start_index,
        stop_after_zeros=rows,
        budget=budget,
    )
    trace = engine.run(cfg)
    report = ExperimentReport(
        spec=spec.spec_str(),
        initial=initial,
        budget=budget,
        budget_exhausted=trace.budget_exhausted,
    )
    for z in trace.zero_indices:
        claims = spec.claim_values(z)
        deltas = [primality.delta(c, policy) if c >= 2 else 0 for c in claims]
        ap = 1
        for d in deltas:
            ap &= d
        report.rows.append((z, claims, deltas, ap))
    return report


def appendix1(count: int = 20, policy=primality.DEFAULT_POLICY):
    """Rows (k, b1(k), delta, b1(k)/2**k) of the m=1 zero-index table."""
    rep = claims_report(AffineMinus(m=1), 1, count, policy=policy)
    out = []
    for k, (z, claims, deltas, ap) in enumerate(rep.rows, start=1):
        out.append((k, z, ap, z / 2.0**k))
    return out


# Periodic-offset table presets.  Offsets are stored in the phase that
# reproduces the reference zero column under b(n) = offsets[(n-1) mod beta];
# the first 2-periodic table needs the opposite phase, hence (2, 0).
APPENDIX6_TABLES = {
    "beta2-1": (PeriodicAffine(m=1, offsets=(2, 0)), 100),
    "beta2-2": (PeriodicAffine(m=10, offsets=(-1, 1)), 100),
    "beta2-3": (PeriodicAffine(m=3, offsets=(-2, 2)), 100),
    "beta3-1": (PeriodicAffine(m=1, offsets=(2, 6, 0)), 3000),
    "beta3-2": (PeriodicAffine(m=1, offsets=(0, 4, 6)), 3000),
    "beta3-3": (PeriodicAffine(m=5, offsets=(-2, 2, -4)), 2000),
    "beta4-1": (PeriodicAffine(m=1, offsets=(1, 7, 11, -1)), 20000),
    "beta4-2": (PeriodicAffine(m=1, offsets=(2, 6, 18, 26)), 100000),
    "beta5-1": (PeriodicAffine(m=1, offsets=(2, 8, 12, 14, 18)), 1500000),
    "beta5-2": (PeriodicAffine(m=1, offsets=(2, 8, 12, 14, 18)), 2000000),
    "beta6-1": (PeriodicAffine(m=1, offsets=(0, 2, 6, 14, 30, 62)), 2000000),
}


def table(family: str, rows: int | None = None, policy=primality.DEFAULT_POLICY, **params):
    """Reproduce a reference table by id.

    ids: appendix2 (m), appendix3 (start), appendix4 (m), appendix5 (p),
    appendix6 (key), c1, c3 (p), c3bis (m), c3ter, c4 (b, c), c5/c10 (n_hi),
    c6/c7/c9 (spec, initial).
    """
    if family == "appendix2":
        m = int(params.get("m", 5))
        return claims_report(AffineMinus(m=m), 1, rows or 6, policy=policy)
    if family == "appendix3":
        start = int(params.get("start", 10))
        return claims_report(PrimePowerMinusOne(p=2), start, rows or 3, policy=policy)
    if family == "appendix4":
        m = int(params.get("m", 2))
        return claims_report(QuadShift(m=m), 4 * m * m, rows or 2, policy=policy)
    if family == "appendix5":
        p = int(params.get("p", 2))
        return claims_report(PowerMinus(b=p, c=2), p, rows or 3, policy=policy)
    if family == "appendix6":
        key = params.get("key", "beta2-1")
        spec, initial = APPENDIX6_TABLES[key]
        return claims_report(spec, initial, rows or 8, policy=policy)
    if family in ("appendix1", "c1"):
        return claims_report(AffineMinus(m=1), 1, rows or 10, policy=policy)
    if family == "c2":
        m = int(params.get("m", 5))
        return claims_report(AffineMinus(m=m), 1, rows or 6, policy=policy)
    if family == "c3":
        p = int(params.get("p", 2))
        return claims_report(PrimePowerMinusOne(p=p), 1, rows or 3, policy=policy)
    if family == "c3bis":
        m = int(params.get("m", 2))
        return claims_report(QuadShift(m=m), 4 * m * m, rows or 3, policy=policy)
    if family == "c3ter":
        # the triplet table starts its count at index 0
        return claims_report(TripletProduct(), 4, rows or 3, start_index=0, policy=policy)
    if family == "c4":
        b = int(params.get("b", 2))
        c = int(params.get("c", 2))
        initial = int(params.get("initial", b))
        return claims_report(PowerMinus(b=b, c=c), initial, rows or 3, policy=policy)
    if family in ("c6", "c7", "c9"):
        spec = parse_spec(params["spec"])
        initial = int(params["initial"])
        return claims_report(spec, initial, rows or 3, policy=policy)
    if family in ("c5", "c10"):
        variant = "product" if family == "c5" else "alternating"
        n_hi = int(params.get("n_hi", (rows or 20) + 1))
        rep = ExperimentReport(spec=family, initial=-1, budget=TABLE_BUDGET)
        for n in range(2, n_hi + 1):
            g, claims, ap = goldbach_g(n, variant, policy=policy)
            deltas = [primality.delta(c, policy) for c in claims]
            rep.rows.append((g, claims, deltas, ap))
        return rep
    if family == "c8":
        variant = params.get("variant", "prime")
        n_hi = int(params.get("n_hi", (rows or 20) + 3))
        spec_cls = ShiftedIndex if variant == "prime" else AlternatingLinear
        rep = ExperimentReport(spec=f"c8-{variant}", initial=-1, budget=TABLE_BUDGET)
        for n in range(4, n_hi + 1):
            f = engine.first_zero(
                RunConfig(initial=n - 2, arg=spec_cls(), mode=SIGNED_BACKWARD)
            )
            claims = spec_cls().claim_values(f)
            deltas = [primality.delta(c, policy) for c in claims]
            ap = 1
            for d in deltas:
                ap &= d
            rep.rows.append((f, claims, deltas, ap))
        return rep
    raise ValueError(f"unknown table family {family!r}")


# ---------------------------------------------------------------------------
# Goldbach decompositions


def goldbach_g(N: int, variant: str = "alternating", policy=primality.DEFAULT_POLICY):
    """First zero g_N of the Goldbach recursion and its decomposition claim."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if variant == "product":
        spec = GoldbachProduct(N=N)
    elif variant == "alternating":
        spec = GoldbachAlt(N=N)
    else:
        raise ValueError(f"unknown goldbach variant {variant!r}")
    g = _first_zero_from(spec, N - 2)
    if g is None:
        raise RuntimeError("descent failed to reach zero (engine bug)")
    claims = spec.claim_values(g)
    return g, claims, primality.all_prime(claims, policy)


def _first_zero_from(spec, initial: int, start_index: int = 1) -> int | None:
    """first_zero treating an initial of 0 as an immediate zero at start_index."""
    if initial == 0:
        return start_index
    return engine.first_zero(
        RunConfig(
            initial=initial,
            arg=spec,
            mode=SIGNED_BACKWARD,
            start_index=start_index,
            budget=initial + start_index + 1,
        )
    )


# ---------------------------------------------------------------------------
# threshold scans

# family -> (make spec, initial offset, claims at the first zero f)
_SCAN_FAMILIES = {
    # with initial N-1 the twin scan's largest failure is 97
    "twin": (lambda N: AlternatingLinear(), -1, lambda N, f: [f, f + 2]),
    "triplet": (
        lambda N: PeriodicAffine(m=1, offsets=(2, 6, 0)),
        -6,
        lambda N, f: [f + 1, f + 3, f + 7],
    ),
    "beatty": (lambda N: BeattyTwin(), -2, lambda N, f: [f + 1, f + 3]),
    # the alternating Goldbach scan uses swapped parity roles and initial
    # N-3; its largest failure is then 2207
    "goldbach": (
        lambda N: GoldbachAlt(N=N, flip=True),
        -3,
        lambda N, f: [f + 1, 2 * N - f - 1],
    ),
}


def _scan_chunk(args):
    family, lo, hi = args
    make_spec, offset, claims_at = _SCAN_FAMILIES[family]
    policy = primality.DEFAULT_POLICY
    fails = []
    for N in range(lo, hi + 1):
        initial = N + offset
        if initial < 0:
            continue
        f = _first_zero_from(make_spec(N), initial)
        if not primality.all_prime(claims_at(N, f), policy):
            fails.append(N)
    return fails


def scan_threshold(family: str, n_hi: int, workers: int = 1) -> ThresholdScanReport:
    """Scan N = 2..n_hi and report every N whose first-zero claim fails."""
    if family not in _SCAN_FAMILIES:
        raise ValueError(f"unknown scan family {family!r}")
    n_lo = 2
    if workers <= 1:
        fails = _scan_chunk((family, n_lo, n_hi))
    else:
        chunk = max(1, (n_hi - n_lo + 1) // (workers * 8))
        jobs = [
            (family, lo, min(lo + chunk - 1, n_hi))
            for lo in range(n_lo, n_hi + 1, chunk)
        ]
        with Pool(workers) as pool:
            fails = [n for part in pool.map(_scan_chunk, jobs) for n in part]
        fails.sort()
    return ThresholdScanReport(
        family=family,
        n_lo=n_lo,
        n_hi=n_hi,
        failing_N=fails,
        largest_failure=fails[-1] if fails else None,
    )


# ---------------------------------------------------------------------------
# backward prime/twin property suites


def conj8_property_check(N: int, variant: str = "prime", policy=primality.DEFAULT_POLICY):
    """Evaluate the claimed biconditionals for one N; returns (id, holds) pairs.

    prime variant (recursion over n-1 from N-2): properties 3..7;
    twin variant (recursion over n+(-1)^n from N-2): properties 3..6.
    Properties outside their validity range are skipped.
    """
    out = []
    d = lambda x: primality.delta(x, policy)
    if variant == "prime":
        if N < 4:
            return out
        f = _first_zero_from(ShiftedIndex(), N - 2)
        out.append(("3", d(f) == 1))
        out.append(("4", (f == N - 1) == (d(N - 1) == 1)))
        out.append(("5", (f == N - 2) == (N - 2 > 2 and d(N - 2) == 1)))
        hold6 = ((f == N - 3) == (d(N - 3) == 1 and (N - 3) % 6 == 1)) and (
            (f == N - 4) == (d(N - 4) == 1 and (N - 4) % 6 == 1)
        )
        out.append(("6", hold6))
        hold7 = ((f == N - 5) == (d(N - 5) == 1 and (N - 5) % 30 == 1)) and (
            (f == N - 6) == (d(N - 6) == 1 and (N - 6) % 30 == 1)
        )
        out.append(("7", hold7))
    elif variant == "twin":
        if N < 4:
            return out
        h = _first_zero_from(AlternatingLinear(), N - 2)
        if N >= 99:
            out.append(("3", d(h) == 1 and d(h + 2) == 1))
        out.append(("4", (h == N - 1) == (d(N - 1) == 1 and d(N + 1) == 1)))
        if N >= 13:
            out.append(("5", (h == N - 2) == (d(N) == 1 and d(N - 2) == 1)))
        if N >= 14:
            out.append(("6", (h == N - 3) == (d(N - 3) == 1 and d(N - 1) == 1)))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return out


# ---------------------------------------------------------------------------
# upsilon estimators


def _upsilon_chunk(args):
    b, c, lo, hi = args
    spec = PowerMinus(b=b, c=c)
    policy = primality.DEFAULT_POLICY
    out = []
    for k in range(lo, hi + 1):
        r = _first_zero_from(spec, k)
        out.append(primality.delta(b * (r + 1) ** c - 1, policy))
    return out


def upsilon(n_hi: int, b: int = 2, c: int = 2, workers: int = 1):
    """Prefix means of the first-zero prime indicator for b*n^c - 1 runs."""
    if workers <= 1:
        hits = _upsilon_chunk((b, c, 1, n_hi))
    else:
        chunk = max(1, n_hi // (workers * 8))
        jobs = [(b, c, lo, min(lo + chunk - 1, n_hi)) for lo in range(1, n_hi + 1, chunk)]
        with Pool(workers) as pool:
            hits = [h for part in pool.map(_upsilon_chunk, jobs) for h in part]
    return _prefix_means(hits)


def _prefix_means(hits):
    out = []
    total = 0
    for k, h in enumerate(hits, start=1):
        total += h
        out.append((k, total / k))
    return out


def _twin_hit(initial: int, policy) -> int:
    r = _first_zero_from(AlternatingQuad(), initial, start_index=0)
    base = 2 * (r + 1) ** 2
    return primality.all_prime([base - 1, base + 1], policy)


def _upsilon_twin_chunk(args):
    lo, hi = args
    return [_twin_hit(k, primality.DEFAULT_POLICY) for k in range(lo, hi + 1)]


def upsilon_twin(n_hi: int, workers: int = 1):
    """Prefix means of the twin-pair indicator for 2n^2 +/- 1 runs from a(0)=k."""
    if workers <= 1:
        hits = _upsilon_twin_chunk((1, n_hi))
    else:
        chunk = max(1, n_hi // (workers * 8))
        jobs = [(lo, min(lo + chunk - 1, n_hi)) for lo in range(1, n_hi + 1, chunk)]
        with Pool(workers) as pool:
            hits = [h for part in pool.map(_upsilon_twin_chunk, jobs) for h in part]
    return _prefix_means(hits)


def v_sequence(count: int, policy=primality.DEFAULT_POLICY):
    """First `count` N with 2N^2 - 1 and 2N^2 + 1 both prime."""
    out = []
    n = 0
    while len(out) < count:
        n += 1
        base = 2 * n * n
        if primality.all_prime([base - 1, base + 1], policy):
            out.append(n)
    return out


def upsilon_v(count: int, policy=primality.DEFAULT_POLICY):
    """Prefix means of the twin indicator for runs started at a(0) = 2 v(k)^2."""
    hits = [_twin_hit(2 * v * v, policy) for v in v_sequence(count, policy)]
    return _prefix_means(hits)


# ---------------------------------------------------------------------------
# Goldbach constant


def goldbach_constant_series(n_hi: int):
    """Partial sums n^(-1/2) * sum_{k=3..n} (1 - g_k/(k-1)) for the
    alternating Goldbach recursion in its nominal orientation."""
    out = []
    total = 0.0
    for k in range(3, n_hi + 1):
        g = _first_zero_from(GoldbachAlt(N=k), k - 2)
        total += 1.0 - g / (k - 1)
        out.append((k, total / math.sqrt(k)))
    return out


# ---------------------------------------------------------------------------
# Legendre variation


def _prime_flags(lo: int, hi: int):
    """numpy bool array for primality of lo..hi (inclusive)."""
    import numpy as np

    size = hi - lo + 1
    flags = np.ones(size, dtype=bool)
    if lo <= 1:
        flags[: min(2 - lo, size)] = False
    for p in _base_primes(int(math.isqrt(hi))):
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            flags[start - lo :: p] = False
    return flags


_base_cache = {}


def _base_primes(limit: int):
    import numpy as np

    cached = _base_cache.get("primes")
    if cached is None or _base_cache["limit"] < limit:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(math.isqrt(limit)) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        _base_cache["primes"] = np.flatnonzero(sieve)
        _base_cache["limit"] = limit
        cached = _base_cache["primes"]
    return [int(p) for p in cached if p <= limit]


def legendre_count(N: int) -> int:
    """Number of k in [2, 2N] with N^2+k+1 and (N+1)^2-k simultaneously prime."""
    if N < 2:
        raise ValueError("N must be >= 2")
    lo, hi = N * N + 1, (N + 1) * (N + 1)
    flags = _prime_flags(lo, hi)
    count = 0
    for k in range(2, 2 * N + 1):
        if flags[N * N + k + 1 - lo] and flags[(N + 1) ** 2 - k - lo]:
            count += 1
    return count


def legendre_holds(N: int) -> bool:
    return legendre_count(N) >= 1


def _legendre_chunk(args):
    import numpy as np

    lo_n, hi_n = args
    lo, hi = lo_n * lo_n + 1, (hi_n + 1) * (hi_n + 1)
    flags = _prime_flags(lo, hi)
    out = []
    for N in range(lo_n, hi_n + 1):
        base = N * N - lo
        x = flags[base + 3 : base + 2 * N + 2]  # N^2+k+1 for k=2..2N
        y = flags[base + 1 : base + 2 * N][::-1]  # (N+1)^2-k for k=2..2N
        out.append((N, int(np.count_nonzero(x & y))))
    return out


def legendre_series(n_hi: int, n_lo: int = 2, workers: int = 1):
    """(N, qualifying-k count) for N = n_lo..n_hi via a segmented sieve."""
    chunk = 256
    jobs = [(lo, min(lo + chunk - 1, n_hi)) for lo in range(n_lo, n_hi + 1, chunk)]
    if workers <= 1:
        parts = [_legendre_chunk(j) for j in jobs]
    else:
        with Pool(workers) as pool:
            parts = pool.map(_legendre_chunk, jobs)
    return [row for part in parts for row in part]


# ---------------------------------------------------------------------------
# gap diagnostics and polynomial first-zero statistics


def gap_diagnostics(n_hi: int, policy=primality.DEFAULT_POLICY):
    """(N, (N - f(N))/sqrt(N), (N - prev_prime(N))/sqrt(N)) for N = 3..n_hi."""
    out = []
    for N in range(3, n_hi + 1):
        f = _first_zero_from(ShiftedIndex(), N - 2)
        pp = primality.prev_prime(N, policy)
        rt = math.sqrt(N)
        out.append((N, (N - f) / rt, (N - pp) / rt))
    return out


def conj7_f_and_L(spec, n_hi: int, policy=primality.DEFAULT_POLICY):
    """First-zero series f(k) for runs from a(1)=k, and the prefix-mean
    estimate of the simultaneous-primality proportion L(P)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    f_series = []
    hits = []
    for k in range(1, n_hi + 1):
        f = _first_zero_from(spec, k)
        f_series.append((k, f))
        hits.append(primality.all_prime(spec.claim_values(f), policy))
    l_series = _prefix_means(hits)
    return f_series, l_series[-1][1] if l_series else 0.0
