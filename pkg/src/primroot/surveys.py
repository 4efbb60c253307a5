"""Bulk empirical computations over prime windows.

Euler-product density constants, totient-ratio sums, stationary and
nonstationary root counts, least-root statistics, omega sums, and repetend
periods.  Reports serialize to dicts carrying a schema_version field; the
survey rows also serialize to CSV.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    factorize,
    first_primes,
    is_prime,
    mobius_table,
    omega_table,
    phi_table,
    prime_flags,
    primes_in_range,
    primes_upto,
)
from .errors import ContractError
from .modmath import multiplicative_order
from .roots import (
    CyclicGroupSpec,
    LeastRoots,
    RootClass,
    classify,
    least_roots,
)

SCHEMA_VERSION = 1

FIXED_POINT_BITS = 128  # fractional bits for large accumulations
EXACT_SUM_LIMIT = 10_000  # exact Fraction accumulation up to this x
LONG_DIVISION_LIMIT = 10**6  # repetend cross-check while p^k stays below this

#: The only primes below 1e12 whose least root mod p differs from mod p^2,
#: as (p, g, h); windows that large are out of sieve reach, so these are
#: verified pointwise.
KNOWN_LEAST_ROOT_EXCEPTIONS = ((40487, 5, 10), (6692367337, 5, 7))


# ---------------------------------------------------------------------------
# Euler products and derived constants


@dataclass(frozen=True)
class EulerProductEntry:
    """Partial product over the first `prime_count` primes for one exponent k."""

    k: int
    prime_count: int
    value: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "k": self.k,
            "prime_count": self.prime_count,
            "value": self.value,
        }


@dataclass(frozen=True)
class ConstantsReport:
    """a1, a2 partial products plus c2 = (a1+a2)/2 and c3 = (a1-a2)/2."""

    prime_count: int
    a1: float
    a2: float
    c2: float
    c3: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "prime_count": self.prime_count,
            "a1": self.a1,
            "a2": self.a2,
            "c2": self.c2,
            "c3": self.c3,
        }


def local_factor(p: int, k: int) -> Fraction:
    """The factor 1 - (p^k - (p-1)^k) / (p^k (p-1)) at one prime."""
    return 1 - Fraction(p**k - (p - 1) ** k, p**k * (p - 1))


def euler_product_constant(k: int, prime_count: int) -> EulerProductEntry:
    """Product of the local factors over the first `prime_count` primes.

    Accumulated as compensated sums of log1p terms, giving 15+ significant
    digits; the two printed reference constants are reproduced to better
    than 1e-12 relative error at prime_count = 10**4.
    """
    if k < 1 or prime_count < 1:
        raise ContractError("k and prime_count must be >= 1")
    terms = []
    for p in first_primes(prime_count):
        f = local_factor(p, k)
        terms.append(math.log1p(-(p**k - (p - 1) ** k) / (p**k * (p - 1))))
        if f <= 0:
            raise ArithmeticError(f"local factor at {p} not positive")
    return EulerProductEntry(k=k, prime_count=prime_count, value=math.exp(math.fsum(terms)))


def density_constants(prime_count: int) -> ConstantsReport:
    """c2 and c3 derived from a1 and a2 over the same prime set."""
    a1 = euler_product_constant(1, prime_count).value
    a2 = euler_product_constant(2, prime_count).value
    return ConstantsReport(
        prime_count=prime_count,
        a1=a1,
        a2=a2,
        c2=(a1 + a2) / 2,
        c3=(a1 - a2) / 2,
    )


@lru_cache(maxsize=4)
def _reference_c2(prime_count: int = 10_000) -> float:
    return density_constants(prime_count).c2


# ---------------------------------------------------------------------------
# Totient-ratio sums


@dataclass(frozen=True)
class TotientRatioReport:
    """Sum over p <= x of (phi(p-1)/(p-1))^k with two normalizations."""

    x: int
    k: int
    total: Fraction
    exact: bool
    prime_count: int
    per_prime: float
    per_x_log_x: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "k": self.k,
            "total": float(self.total),
            "exact": self.exact,
            "prime_count": self.prime_count,
            "per_prime": self.per_prime,
            "per_x_log_x": self.per_x_log_x,
        }


def totient_ratio_sum(x: int, k: int = 1, exact: bool | None = None) -> TotientRatioReport:
    """Accumulate (phi(p-1)/(p-1))^k over primes p <= x.

    Small x (default up to 10**4) is summed as exact rationals.  Larger x
    switches to a 128-fractional-bit fixed-point accumulator: each term is
    still formed exactly, and the total carries at worst pi(x) * 2^-128 of
    rounding, far below anything a float report can show.
    """
    if x < 2 or k < 1:
        raise ContractError("need x >= 2 and k >= 1")
    if exact is None:
        exact = x <= EXACT_SUM_LIMIT
    phi = phi_table(x)
    primes = primes_upto(x)
    if exact:
        total = Fraction(0)
        for p in primes:
            total += Fraction(int(phi[p - 1]), p - 1) ** k
    else:
        acc = 0
        for p in primes:
            num = int(phi[p - 1]) ** k
            den = (p - 1) ** k
            acc += (num << FIXED_POINT_BITS) // den
        total = Fraction(acc, 1 << FIXED_POINT_BITS)
    value = float(total)
    return TotientRatioReport(
        x=x,
        k=k,
        total=total,
        exact=exact,
        prime_count=len(primes),
        per_prime=value / len(primes),
        per_x_log_x=value / (x / math.log(x)),
    )


@dataclass(frozen=True)
class MixedMainTermReport:
    """(1/2) sum over x <= p <= 2x of (phi(p-1)/(p-1)) (1 + phi(phi(p^2))/p^2)."""

    x: int
    total: float
    prime_count: int
    reference_c2: float
    ratio_to_c2_x_log_x: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "total": self.total,
            "prime_count": self.prime_count,
            "reference_c2": self.reference_c2,
            "ratio_to_c2_x_log_x": self.ratio_to_c2_x_log_x,
        }


def mixed_main_term(x: int, reference_c2: float | None = None) -> MixedMainTermReport:
    """Main-term sum for the window [x, 2x], reported against c2 * x/log x.

    phi(phi(p^2)) = (p-1) phi(p-1) since phi(p^2) = p(p-1) with p prime, so
    each term is rational and is accumulated in fixed point.
    """
    if x < 1:
        raise ContractError(f"need x >= 1, got {x}")
    phi = phi_table(2 * x)
    acc = 0
    count = 0
    for p in primes_in_range(x, 2 * x).primes:
        f = int(phi[p - 1])
        num = f * (p * p + (p - 1) * f)
        den = (p - 1) * p * p
        acc += (num << FIXED_POINT_BITS) // den
        count += 1
    total = acc / 2 / 2**FIXED_POINT_BITS
    c2 = reference_c2 if reference_c2 is not None else _reference_c2()
    expected = c2 * x / math.log(x) if x > 1 else float("nan")
    return MixedMainTermReport(
        x=x,
        total=total,
        prime_count=count,
        reference_c2=c2,
        ratio_to_c2_x_log_x=total / expected if x > 1 else float("nan"),
    )


# ---------------------------------------------------------------------------
# Stationary / nonstationary survey


@dataclass(frozen=True)
class SurveyRow:
    """Counts of root classes among g in [2, 2z] for one prime."""

    p: int
    z: int
    n_pr: int
    n_s: int
    n_n: int
    least: LeastRoots

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "z": self.z,
            "n_pr": self.n_pr,
            "n_s": self.n_s,
            "n_n": self.n_n,
            "g": self.least.g,
            "h": self.least.h,
            "gs": self.least.gs,
        }


SURVEY_CSV_HEADER = "schema_version,p,z,n_pr,n_s,n_n,g,h,gs"


@dataclass(frozen=True)
class StationarySurveyReport:
    x: int
    z: int
    rows: tuple[SurveyRow, ...]
    n_pr_total: int
    n_s_total: int
    n_n_total: int
    #: N_s / (z * number of primes in the window)
    ns_per_z_pi: float
    #: N_s / z^2, the pair-count normalization
    ns_per_z2: float
    nn_per_z_pi: float
    nn_per_z2: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "z": self.z,
            "rows": [r.as_dict() for r in self.rows],
            "n_pr_total": self.n_pr_total,
            "n_s_total": self.n_s_total,
            "n_n_total": self.n_n_total,
            "ns_per_z_pi": self.ns_per_z_pi,
            "ns_per_z2": self.ns_per_z2,
            "nn_per_z_pi": self.nn_per_z_pi,
            "nn_per_z2": self.nn_per_z2,
        }

    def csv_lines(self) -> list[str]:
        lines = [SURVEY_CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{SCHEMA_VERSION},{r.p},{r.z},{r.n_pr},{r.n_s},{r.n_n},"
                f"{r.least.g},{r.least.h},{r.least.gs}"
            )
        return lines


def parse_survey_csv(text: str) -> list[SurveyRow]:
    """Inverse of StationarySurveyReport.csv_lines, for round-trip checks."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if lines[0] != SURVEY_CSV_HEADER:
        raise ContractError(f"unexpected CSV header: {lines[0]!r}")
    rows = []
    for ln in lines[1:]:
        ver, p, z, n_pr, n_s, n_n, g, h, gs = (int(c) for c in ln.split(","))
        if ver != SCHEMA_VERSION:
            raise ContractError(f"unsupported schema_version {ver}")
        rows.append(
            SurveyRow(p, z, n_pr, n_s, n_n, LeastRoots(p=p, g=g, h=h, gs=gs))
        )
    return rows


def survey_row(p: int, z: int) -> SurveyRow:
    """Counts over g in [2, 2z] for one prime, plus its least roots."""
    if 2 * z >= p * p:
        raise ContractError(f"2z = {2 * z} reaches p^2 = {p * p}; counts undefined")
    fac = factorize(p - 1)
    n_s = n_n = 0
    for g in range(2, 2 * z + 1):
        cls = classify(g, p, fac)
        if cls is RootClass.STATIONARY:
            n_s += 1
        elif cls is RootClass.NONSTATIONARY:
            n_n += 1
    return SurveyRow(p=p, z=z, n_pr=n_s + n_n, n_s=n_s, n_n=n_n, least=least_roots(p))


def _survey_worker(args: tuple[int, int]) -> SurveyRow:
    return survey_row(*args)


def _window_map(fn, items, workers: int, progress=None):
    if workers <= 1:
        out = []
        for i, item in enumerate(items):
            out.append(fn(item))
            if progress and (i + 1) % 256 == 0:
                progress(i + 1, len(items))
        return out
    import multiprocessing

    with multiprocessing.Pool(workers) as pool:
        out = []
        for i, res in enumerate(pool.imap(fn, items, chunksize=16)):
            out.append(res)
            if progress and (i + 1) % 256 == 0:
                progress(i + 1, len(items))
        return out


def stationary_survey(
    x: int, z: int, workers: int = 1, progress=None
) -> StationarySurveyReport:
    """Per-prime root-class counts over the window [x, 2x] with g <= 2z.

    Rows are ordered by p and aggregates are summed in that order, so the
    output is identical for any worker count.
    """
    if x < 2 or z < 2:
        raise ContractError("need x >= 2 and z >= 2")
    primes = [p for p in primes_in_range(x, 2 * x).primes if p % 2 == 1]
    if not primes:
        raise ContractError(f"no odd primes in [{x}, {2 * x}]")
    if 2 * z >= primes[0] ** 2:
        raise ContractError(f"2z = {2 * z} reaches p^2 for p = {primes[0]}")
    rows = _window_map(_survey_worker, [(p, z) for p in primes], workers, progress)
    n_s = sum(r.n_s for r in rows)
    n_n = sum(r.n_n for r in rows)
    n_pr = sum(r.n_pr for r in rows)
    return StationarySurveyReport(
        x=x,
        z=z,
        rows=tuple(rows),
        n_pr_total=n_pr,
        n_s_total=n_s,
        n_n_total=n_n,
        ns_per_z_pi=n_s / (z * len(primes)),
        ns_per_z2=n_s / (z * z),
        nn_per_z_pi=n_n / (z * len(primes)),
        nn_per_z2=n_n / (z * z),
    )


# ---------------------------------------------------------------------------
# Least-root agreement


@dataclass(frozen=True)
class AgreementReport:
    """Counts of primes in [x, 2x] with g(p) == h(p) versus g(p) != h(p)."""

    x: int
    n_agree: int
    n_disagree: int
    exceptions: tuple[LeastRoots, ...]

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "n_agree": self.n_agree,
            "n_disagree": self.n_disagree,
            "exceptions": [
                {"p": e.p, "g": e.g, "h": e.h, "gs": e.gs} for e in self.exceptions
            ],
        }


def least_root_agreement(x: int, workers: int = 1, progress=None) -> AgreementReport:
    """Scan [x, 2x] for primes whose least root mod p fails to lift."""
    if x < 2:
        raise ContractError(f"need x >= 2, got {x}")
    primes = [p for p in primes_in_range(x, 2 * x).primes if p % 2 == 1]
    results = _window_map(least_roots, primes, workers, progress)
    exceptions = tuple(r for r in results if r.g != r.h)
    return AgreementReport(
        x=x,
        n_agree=len(results) - len(exceptions),
        n_disagree=len(exceptions),
        exceptions=exceptions,
    )


def verify_known_exceptions() -> bool:
    """Pointwise re-check of the two catalogued g(p) != h(p) primes."""
    for p, g, h in KNOWN_LEAST_ROOT_EXCEPTIONS:
        r = least_roots(p)
        if (r.g, r.h) != (g, h):
            return False
    return True


# ---------------------------------------------------------------------------
# Fixed-g density


@dataclass(frozen=True)
class FixedGDensity:
    g: int
    x: int
    stationary_count: int
    prime_count: int
    fraction: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "g": self.g,
            "x": self.x,
            "stationary_count": self.stationary_count,
            "prime_count": self.prime_count,
            "fraction": self.fraction,
        }


def fixed_g_density(g: int, x: int) -> FixedGDensity:
    """Fraction of primes p <= x for which g is a stationary root.

    g = 0, +-1 and perfect squares are rejected: they can never generate for
    almost all p, so their density question is vacuous.  p = 2 counts in the
    denominator but never in the numerator.
    """
    if g in (-1, 0, 1) or (g > 1 and math.isqrt(g) ** 2 == g):
        raise ContractError(f"g = {g} excluded (unit or perfect square)")
    if x < 3:
        raise ContractError(f"need x >= 3, got {x}")
    primes = primes_upto(x)
    hits = 0
    for p in primes:
        if p == 2:
            continue
        u = g % p
        if u == 0:
            continue
        if classify(u, p) is RootClass.STATIONARY:
            hits += 1
    return FixedGDensity(
        g=g,
        x=x,
        stationary_count=hits,
        prime_count=len(primes),
        fraction=hits / len(primes),
    )


# ---------------------------------------------------------------------------
# Omega sums


@dataclass(frozen=True)
class OmegaSumsReport:
    """Sieve-built omega sums with unasserted normalizations.

    The shifted-prime sums have no proven asymptotic constants; ratios are
    emitted as data only.
    """

    x: int
    sum_two_omega_all: int
    sum_two_omega_shifted: int
    sum_mu_omega_shifted: int
    sum_omega_shifted: int
    prime_count: int
    all_per_x_log_x: float
    shifted_per_pnt_loglog: float
    omega_shifted_per_prime: float
    mu_omega_per_prime: float

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "sum_two_omega_all": self.sum_two_omega_all,
            "sum_two_omega_shifted": self.sum_two_omega_shifted,
            "sum_mu_omega_shifted": self.sum_mu_omega_shifted,
            "sum_omega_shifted": self.sum_omega_shifted,
            "prime_count": self.prime_count,
            "all_per_x_log_x": self.all_per_x_log_x,
            "shifted_per_pnt_loglog": self.shifted_per_pnt_loglog,
            "omega_shifted_per_prime": self.omega_shifted_per_prime,
            "mu_omega_per_prime": self.mu_omega_per_prime,
        }


def omega_sums(x: int) -> OmegaSumsReport:
    """Sum 2^omega(n) over n <= x and three shifted-prime sums, via sieves."""
    if x < 2:
        raise ContractError(f"need x >= 2, got {x}")
    import numpy as np

    w = omega_table(x)
    mu = mobius_table(x)
    flags = prime_flags(x)
    primes = np.flatnonzero(flags)
    pow2 = np.left_shift(np.int64(1), w)
    total_all = int(pow2[1:].sum())
    shifted_idx = primes - 1
    total_shifted = int(pow2[shifted_idx].sum())
    mu_omega = int((mu[shifted_idx] * w[shifted_idx]).sum())
    omega_shifted = int(w[shifted_idx].sum())
    n_primes = len(primes)
    lx = math.log(x)
    return OmegaSumsReport(
        x=x,
        sum_two_omega_all=total_all,
        sum_two_omega_shifted=total_shifted,
        sum_mu_omega_shifted=mu_omega,
        sum_omega_shifted=omega_shifted,
        prime_count=n_primes,
        all_per_x_log_x=total_all / (x * lx),
        shifted_per_pnt_loglog=(
            total_shifted / (x / lx * math.log(lx)) if lx > 1 else float("nan")
        ),
        omega_shifted_per_prime=omega_shifted / n_primes,
        mu_omega_per_prime=mu_omega / n_primes,
    )


# ---------------------------------------------------------------------------
# Repetend periods


@dataclass(frozen=True)
class PeriodResult:
    """Multiplicative order of the base mod p^k, i.e. the repetend length of 1/p^k."""

    base: int
    p: int
    k: int
    period: int
    maximal: bool
    repetend_length: int | None

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "base": self.base,
            "p": self.p,
            "k": self.k,
            "period": self.period,
            "maximal": self.maximal,
            "repetend_length": self.repetend_length,
        }


def repetend_digits(numerator: int, modulus: int, base: int) -> list[int]:
    """Digits of the repeating block of numerator/modulus in the given base.

    Requires gcd(base, modulus) = 1 so the expansion is purely periodic.
    """
    digits = []
    r = numerator % modulus
    first = r
    while True:
        r *= base
        digits.append(r // modulus)
        r %= modulus
        if r == first:
            return digits


def period(base: int, p: int, k: int) -> PeriodResult:
    """Period of the base-`base` expansion of 1/p^k.

    The period is the multiplicative order of the base mod p^k; it is
    maximal exactly when it reaches p^(k-1)(p-1).  While p^k stays small the
    repetend is also produced by long division and its length is checked
    against the order.
    """
    if base < 2:
        raise ContractError(f"base must be >= 2, got {base}")
    if k < 1:
        raise ContractError(f"k must be >= 1, got {k}")
    if p < 3 or not is_prime(p):
        raise ContractError(f"{p} is not an odd prime")
    if base % p == 0:
        raise ContractError(f"base {base} divisible by {p}; expansion terminates")
    spec = CyclicGroupSpec.for_prime_power(p, k)
    t = multiplicative_order(base % spec.modulus, spec).order
    rep_len = None
    if spec.modulus <= LONG_DIVISION_LIMIT:
        rep_len = len(repetend_digits(1, spec.modulus, base))
        assert rep_len == t, f"long division found period {rep_len}, order is {t}"
    return PeriodResult(
        base=base,
        p=p,
        k=k,
        period=t,
        maximal=t == spec.group_order,
        repetend_length=rep_len,
    )


# ---------------------------------------------------------------------------
# Least stationary root statistics


@dataclass(frozen=True)
class GsStatsReport:
    """Distribution of the least simultaneous root over primes p <= x."""

    x: int
    count: int
    max_gs: int
    mean_gs: float
    max_gs_over_log_p: float
    histogram: dict[int, int]
    values: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "x": self.x,
            "count": self.count,
            "max_gs": self.max_gs,
            "mean_gs": self.mean_gs,
            "max_gs_over_log_p": self.max_gs_over_log_p,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def least_gs_stats(x: int, workers: int = 1, progress=None) -> GsStatsReport:
    """Max, mean and histogram of gs(p) for odd p <= x; evidence, no assertion."""
    if x < 3:
        raise ContractError(f"need x >= 3, got {x}")
    primes = [p for p in primes_upto(x) if p % 2 == 1]
    results = _window_map(least_roots, primes, workers, progress)
    values = tuple((r.p, r.gs) for r in results)
    hist = Counter(gs for _, gs in values)
    return GsStatsReport(
        x=x,
        count=len(values),
        max_gs=max(gs for _, gs in values),
        mean_gs=sum(gs for _, gs in values) / len(values),
        max_gs_over_log_p=max(gs / math.log(p) for p, gs in values),
        histogram=dict(hist),
        values=values,
    )
