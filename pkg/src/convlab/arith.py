"""Sieve-backed arithmetic functions.

A single smallest-prime-factor table is the source of truth: factorizations
come out of it in O(log n) divisions, and the classical point functions
d(n), sigma_s(n), mu(n), phi(n), Lambda(n) are evaluated from the
factorization.  Bulk tables over [1, N] are built with vectorised sieve
passes (hyperbola enumeration for divisor sums, prime loops for mu, phi
and Lambda) rather than per-n evaluation, so tabulation costs O(N log N)
array element updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .errors import UsageError

__all__ = [
    "FactorSieve",
    "Factorization",
    "ArithTable",
    "build_sieve",
    "factorize",
    "divisors",
    "divisor_count",
    "sigma_real",
    "sigma_rational",
    "mobius",
    "euler_phi",
    "von_mangoldt",
    "tabulate",
]


@dataclass(frozen=True)
class FactorSieve:
    """Smallest-prime-factor table for 1..limit.

    Conventions: spf[0] = 0, spf[1] = 1, spf[p] = p for primes.  The table
    is immutable and safe to share between threads.  Memory is about
    4 bytes per entry (int32) for limits below 2**31.
    """

    limit: int
    spf: np.ndarray

    def primes(self) -> np.ndarray:
        """All primes up to the sieve limit, ascending."""
        idx = np.arange(self.limit + 1, dtype=self.spf.dtype)
        mask = self.spf == idx
        mask[:2] = False
        return np.nonzero(mask)[0]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization n = prod p_i**e_i with p_i strictly increasing."""

    n: int
    factors: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class ArithTable:
    """Values of one arithmetic function on 1..N.

    values has length N + 1 and is 1-indexed; values[0] is unused and zero.
    kind is a canonical tag such as "divisor", "sigma(2)", "sigma_norm(0.5)",
    "mobius", "phi", "lambda" or "custom".
    """

    kind: str
    N: int
    values: np.ndarray
    s: float | None = None

    @property
    def is_integer(self) -> bool:
        return np.issubdtype(self.values.dtype, np.integer)


def build_sieve(limit: int) -> FactorSieve:
    """Build the smallest-prime-factor table for 1..limit.

    Raises UsageError for limit < 2 and propagates MemoryError if the
    table (about 4*limit bytes) cannot be allocated.
    """
    if limit < 2:
        raise UsageError(f"sieve limit must be >= 2, got {limit}")
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    spf[1] = 1
    return FactorSieve(limit=limit, spf=spf)


def factorize(sieve: FactorSieve, n: int) -> Factorization:
    """Factor n by repeated division by the sieve's smallest prime factors."""
    if not 1 <= n <= sieve.limit:
        raise UsageError(f"n must lie in [1, {sieve.limit}], got {n}")
    spf = sieve.spf
    factors: List[Tuple[int, int]] = []
    m = n
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        factors.append((p, e))
    return Factorization(n=n, factors=tuple(factors))


def divisors(f: Factorization) -> List[int]:
    """All positive divisors of f.n, ascending."""
    out = [1]
    for p, e in f.factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def divisor_count(f: Factorization) -> int:
    """d(n) = prod (e_i + 1)."""
    out = 1
    for _, e in f.factors:
        out *= e + 1
    return out


def sigma_real(f: Factorization, s: float) -> float:
    """sigma_s(n) = sum_{d | n} d**s for real s, via the Euler product.

    Each local factor is (p**(s(e+1)) - 1) / (p**s - 1), evaluated with
    expm1 for stability; s = 0 degenerates to the divisor count.
    """
    if s == 0.0:
        return float(divisor_count(f))
    out = 1.0
    for p, e in f.factors:
        lp = math.log(p)
        out *= math.expm1(s * (e + 1) * lp) / math.expm1(s * lp)
    return out


def sigma_rational(f: Factorization, k: int) -> Fraction:
    """sigma_k(n) as an exact rational, for integer k >= -1.

    sigma_{-1}(n) = sigma_1(n) / n is the case the main terms consume;
    conversion to float is left to the caller so it happens exactly once.
    """
    if k < -1:
        raise UsageError(f"sigma_rational supports k >= -1, got {k}")
    if k == 0:
        return Fraction(divisor_count(f))
    out = Fraction(1)
    for p, e in f.factors:
        pk = Fraction(p) ** k
        out *= (pk ** (e + 1) - 1) / (pk - 1)
    return out


def mobius(f: Factorization) -> int:
    for _, e in f.factors:
        if e > 1:
            return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(f: Factorization) -> int:
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def von_mangoldt(f: Factorization) -> float:
    """log p when n is a prime power p**e, else 0."""
    if len(f.factors) == 1:
        return math.log(f.factors[0][0])
    return 0.0


# --- cached raw tables -------------------------------------------------
#
# The bool prime sieve, mu and phi tables below are shared plumbing for
# tabulate() and for the Ramanujan-sum machinery.  They grow on demand
# (rounded up to powers of two) and are handed out as read-only views.

_prime_cache: dict = {"limit": 1, "primes": np.empty(0, dtype=np.int64)}
_mobius_cache: dict = {"limit": 0, "table": None}
_phi_cache: dict = {"limit": 0, "table": None}


def _grown(limit: int) -> int:
    return max(1 << max(limit.bit_length(), 10), limit)


def _primes_upto(limit: int) -> np.ndarray:
    if limit > _prime_cache["limit"]:
        size = _grown(limit)
        is_prime = np.ones(size + 1, dtype=bool)
        is_prime[:2] = False
        for p in range(2, math.isqrt(size) + 1):
            if is_prime[p]:
                is_prime[p * p :: p] = False
        primes = np.nonzero(is_prime)[0]
        primes.setflags(write=False)
        _prime_cache["limit"] = size
        _prime_cache["primes"] = primes
    primes = _prime_cache["primes"]
    return primes[: np.searchsorted(primes, limit, side="right")]


def _mobius_upto(limit: int) -> np.ndarray:
    if limit > _mobius_cache["limit"]:
        size = _grown(limit)
        mu = np.ones(size + 1, dtype=np.int8)
        mu[0] = 0
        for p in _primes_upto(size):
            p = int(p)
            mu[p::p] *= -1
            sq = p * p
            if sq <= size:
                mu[sq::sq] = 0
        mu.setflags(write=False)
        _mobius_cache["limit"] = size
        _mobius_cache["table"] = mu
    return _mobius_cache["table"][: limit + 1]


def _phi_upto(limit: int) -> np.ndarray:
    if limit > _phi_cache["limit"]:
        size = _grown(limit)
        phi = np.arange(size + 1, dtype=np.int64)
        for p in _primes_upto(size):
            p = int(p)
            block = phi[p::p]
            block -= block // p
        phi.setflags(write=False)
        _phi_cache["limit"] = size
        _phi_cache["table"] = phi
    return _phi_cache["table"][: limit + 1]


# --- bulk tables -------------------------------------------------------


def _divisor_table(N: int) -> np.ndarray:
    # hyperbola pairing: each d <= sqrt(n) pairs with n/d, squares once
    out = np.zeros(N + 1, dtype=np.int32)
    for d in range(1, math.isqrt(N) + 1):
        out[d * d :: d] += 2
        out[d * d] -= 1
    return out


def _sigma_table_int(N: int, k: int) -> np.ndarray:
    # sum_{d | n} d**k exactly, integer k >= 1
    if N**k >= 2**61:
        raise UsageError(
            f"sigma({k}) table to N={N} would overflow 64-bit accumulation; "
            "use sigma_norm or sigma_real instead"
        )
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, math.isqrt(N) + 1):
        idx = np.arange(d * d, N + 1, d, dtype=np.int64)
        out[idx] += d**k + (idx // d) ** k
        out[d * d] -= d**k
    return out


def _sigma_table_float(N: int, s: float) -> np.ndarray:
    # sum_{d | n} d**s in double precision, any real s
    out = np.zeros(N + 1, dtype=np.float64)
    for d in range(1, math.isqrt(N) + 1):
        idx = np.arange(d * d, N + 1, d, dtype=np.int64)
        out[idx] += float(d) ** s + (idx // d).astype(np.float64) ** s
        out[d * d] -= float(d) ** s
    return out


def _lambda_table(N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.float64)
    for p in _primes_upto(N):
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= N:
            out[pk] = logp
            pk *= p
    return out


_TABLE_KINDS = ("divisor", "sigma", "mobius", "phi", "lambda", "sigma_norm")


def tabulate(sieve: FactorSieve, kind: str, N: int, s: float | None = None) -> ArithTable:
    """Tabulate one arithmetic function on 1..N.

    kind is one of "divisor", "sigma", "mobius", "phi", "lambda",
    "sigma_norm"; the sigma kinds take the exponent s.  sigma with a
    non-negative integer s yields an exact integer table, any other s a
    float table.  sigma_norm(s) tabulates sigma_s(n) / n**s.  Requires
    N <= sieve.limit.
    """
    if kind not in _TABLE_KINDS:
        raise UsageError(f"unknown table kind {kind!r}")
    if not 1 <= N <= sieve.limit:
        raise UsageError(f"N must lie in [1, {sieve.limit}], got {N}")
    if kind in ("sigma", "sigma_norm"):
        if s is None:
            raise UsageError(f"kind {kind!r} needs an exponent s")
        s = float(s)
    elif s is not None:
        raise UsageError(f"kind {kind!r} takes no exponent")

    if kind == "divisor":
        return ArithTable("divisor", N, _divisor_table(N))
    if kind == "sigma":
        if s >= 0 and s.is_integer():
            k = int(s)
            values = _divisor_table(N).astype(np.int64) if k == 0 else _sigma_table_int(N, k)
        else:
            values = _sigma_table_float(N, s)
        return ArithTable(f"sigma({s:g})", N, values, s=s)
    if kind == "sigma_norm":
        return ArithTable(f"sigma_norm({s:g})", N, _sigma_table_float(N, -s), s=s)
    if kind == "mobius":
        values = _mobius_upto(N).copy()
        return ArithTable("mobius", N, values)
    if kind == "phi":
        values = _phi_upto(N).copy()
        values[0] = 0
        return ArithTable("phi", N, values)
    values = _lambda_table(N)
    return ArithTable("lambda", N, values)
