"""Ramanujan sums, Ramanujan expansions, the singular series, orthogonality.

The working definition is the Mobius-divisor form

    c_r(n) = sum_{d | gcd(n, r)} mu(r/d) d,

an exact integer.  The root-of-unity definition

    c_r(n) = sum_{a in (Z/rZ)*} e(a n / r),      e(t) = exp(2 pi i t),

is kept as an independent oracle that checks its own rounding residue.

Expansions f(n) = sum_r a_f(r) c_r(n) are truncated at a level R.  For
coefficient rules with proven decay |a(r)| <= K r**-(1+delta) the tail
beyond R is bounded by K sigma_1(n) R**-delta / delta; rules without
decay metadata (the divisor and Hardy expansions converge only
conditionally) must be summed in increasing r and carry no tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .arith import (
    FactorSieve,
    _mobius_upto,
    _phi_upto,
    divisors,
    euler_phi,
    factorize,
    mobius,
    sigma_rational,
)
from .errors import ConsistencyError, UsageError
from .special import zeta_real

__all__ = [
    "CoefficientProvider",
    "ExpansionSum",
    "OrthogonalityRecord",
    "ramanujan_sum",
    "ramanujan_sum_oracle",
    "ramanujan_sum_table",
    "sigma_provider",
    "divisor_provider",
    "hardy_provider",
    "custom_provider",
    "expansion_partial_sum",
    "expansion_adaptive",
    "singular_series",
    "orthogonality_defect",
]

_ORACLE_R_CAP = 10_000
_ORACLE_TOL = 1e-6


def ramanujan_sum(sieve: FactorSieve, r: int, n: int) -> int:
    """c_r(n) = sum_{d | gcd(n, r)} mu(r/d) d, exact."""
    if r < 1 or n < 1:
        raise UsageError(f"ramanujan_sum needs r >= 1 and n >= 1, got r={r}, n={n}")
    if r > sieve.limit:
        raise UsageError(f"r={r} exceeds sieve limit {sieve.limit}")
    total = 0
    g = math.gcd(r, n)
    for d in divisors(factorize(sieve, g)):
        m = mobius(factorize(sieve, r // d))
        if m:
            total += m * d
    return total


@lru_cache(maxsize=512)
def _unit_roots(r: int) -> np.ndarray:
    roots = np.exp((2j * math.pi / r) * np.arange(r))
    roots.setflags(write=False)
    return roots


@lru_cache(maxsize=512)
def _primitive_residues(r: int) -> np.ndarray:
    a = np.arange(r, dtype=np.int64)
    res = a[np.gcd(a, r) == 1]
    res.setflags(write=False)
    return res


def ramanujan_sum_oracle(r: int, n: int) -> int:
    """c_r(n) summed over primitive r-th roots of unity.

    O(r) per call; refuses r > 10**4.  Raises ConsistencyError if the
    imaginary part or the rounding residue reaches 1e-6.
    """
    if r < 1 or n < 1:
        raise UsageError(f"oracle needs r >= 1 and n >= 1, got r={r}, n={n}")
    if r > _ORACLE_R_CAP:
        raise UsageError(f"oracle is O(r) and is capped at r <= {_ORACLE_R_CAP}")
    z = _unit_roots(r)[(_primitive_residues(r) * n) % r].sum()
    val = round(z.real)
    if abs(z.imag) >= _ORACLE_TOL or abs(z.real - val) >= _ORACLE_TOL:
        raise ConsistencyError(
            f"root-of-unity sum for c_{r}({n}) did not round cleanly: {z!r}"
        )
    return int(val)


def ramanujan_sum_table(sieve: FactorSieve, n: int, R: int) -> np.ndarray:
    """c_r(n) for r = 1..R as an int64 array (index 0 unused).

    Accumulates d * mu(r/d) over the divisors d of n, vectorised over the
    multiples of each d.  Requires R <= sieve.limit.
    """
    if n < 1 or R < 1:
        raise UsageError(f"need n >= 1 and R >= 1, got n={n}, R={R}")
    if R > sieve.limit:
        raise UsageError(f"R={R} exceeds sieve limit {sieve.limit}")
    mu = _mobius_upto(R)
    out = np.zeros(R + 1, dtype=np.int64)
    for d in divisors(factorize(sieve, n)):
        if d > R:
            continue
        q = R // d
        out[d :: d] += d * mu[1 : q + 1].astype(np.int64)
    return out


# --- expansion coefficient providers ------------------------------------


@dataclass(frozen=True)
class CoefficientProvider:
    """Coefficient rule r -> a(r) for a Ramanujan expansion.

    delta/bound record a proven decay |a(r)| <= bound * r**-(1+delta);
    providers without them are conditionally convergent and must be
    summed in increasing r.
    """

    kind: str
    rule: Callable[[int], float]
    delta: Optional[float] = None
    bound: Optional[float] = None
    _vector: Optional[Callable[[int], np.ndarray]] = field(default=None, repr=False)
    _sigma_s: Optional[float] = field(default=None, repr=False)

    @property
    def conditional(self) -> bool:
        return self.delta is None

    def coefficients(self, R: int) -> np.ndarray:
        """a(r) for r = 1..R as a float64 array (index 0 zero)."""
        if self._vector is not None:
            return self._vector(R)
        out = np.zeros(R + 1, dtype=np.float64)
        for r in range(1, R + 1):
            out[r] = self.rule(r)
        return out


def sigma_provider(s: float) -> CoefficientProvider:
    """Coefficients of sigma_s(n)/n**s = zeta(s+1) sum_r c_r(n) / r**(s+1), s > 0."""
    if s <= 0:
        raise UsageError(f"sigma provider needs s > 0, got {s}")
    s = float(s)
    z = zeta_real(s + 1.0)

    def rule(r: int) -> float:
        return z * float(r) ** -(s + 1.0)

    def vector(R: int) -> np.ndarray:
        out = np.zeros(R + 1, dtype=np.float64)
        out[1:] = z * np.arange(1, R + 1, dtype=np.float64) ** -(s + 1.0)
        return out

    return CoefficientProvider(
        kind=f"sigma({s:g})", rule=rule, delta=s, bound=z, _vector=vector, _sigma_s=s
    )


def divisor_provider() -> CoefficientProvider:
    """Coefficients of d(n) = -sum_r (log r / r) c_r(n), conditionally convergent."""

    def rule(r: int) -> float:
        return -math.log(r) / r

    def vector(R: int) -> np.ndarray:
        out = np.zeros(R + 1, dtype=np.float64)
        r = np.arange(1, R + 1, dtype=np.float64)
        out[1:] = -np.log(r) / r
        return out

    return CoefficientProvider(kind="divisor", rule=rule, _vector=vector)


def hardy_provider(sieve: FactorSieve) -> CoefficientProvider:
    """Coefficients of (phi(n)/n) Lambda(n) = sum_r (mu(r)/phi(r)) c_r(n)."""

    def rule(r: int) -> float:
        f = factorize(sieve, r)
        m = mobius(f)
        return m / euler_phi(f) if m else 0.0

    def vector(R: int) -> np.ndarray:
        mu = _mobius_upto(R).astype(np.float64)
        phi = _phi_upto(R).astype(np.float64)
        out = np.zeros(R + 1, dtype=np.float64)
        out[1:] = mu[1:] / phi[1:]
        return out

    return CoefficientProvider(kind="hardy", rule=rule, _vector=vector)


def custom_provider(
    rule: Callable[[int], float],
    delta: float | None = None,
    bound: float | None = None,
    kind: str = "custom",
) -> CoefficientProvider:
    """Wrap an arbitrary coefficient rule, optionally with decay metadata."""
    if (delta is None) != (bound is None):
        raise UsageError("decay metadata needs both delta and bound")
    if delta is not None and (delta <= 0 or bound <= 0):
        raise UsageError("decay metadata must be positive")
    return CoefficientProvider(kind=kind, rule=rule, delta=delta, bound=bound)


@dataclass(frozen=True)
class ExpansionSum:
    """Truncated expansion sum_{r <= R} a(r) c_r(n) with its tail bound.

    tail_bound is None for conditional providers.
    """

    value: float
    tail_bound: Optional[float]
    R: int


def _tail_bound(provider: CoefficientProvider, sigma1_n: int, R: int) -> Optional[float]:
    if provider.conditional:
        return None
    # sum_{r > R} r**-(1+delta) <= R**-delta / delta
    return provider.bound * sigma1_n * R**-provider.delta / provider.delta


def expansion_partial_sum(
    sieve: FactorSieve, provider: CoefficientProvider, n: int, R: int
) -> ExpansionSum:
    """sum_{r <= R} a(r) c_r(n), terms in increasing r."""
    c = ramanujan_sum_table(sieve, n, R)
    a = provider.coefficients(R)
    value = float(np.dot(a[1:], c[1:].astype(np.float64)))
    sigma1_n = int(sigma_rational(factorize(sieve, n), 1))
    return ExpansionSum(value=value, tail_bound=_tail_bound(provider, sigma1_n, R), R=R)


# For sigma-kind providers the partial sum regroups exactly over the
# divisors of n:
#   sum_{r <= R} zeta(s+1) r**-(s+1) c_r(n)
#     = zeta(s+1) sum_{d | n} d**-s sum_{q <= R/d} mu(q) q**-(s+1),
# so with prefix sums of mu(q) q**-(s+1) each evaluation costs O(d(n)).
# Used by the adaptive loop; agrees with the literal product-sum to
# floating-point rounding.

_mu_power_cache: dict = {}


def _mu_power_prefix(expo: float, limit: int) -> np.ndarray:
    cached = _mu_power_cache.get(expo)
    if cached is None or len(cached) <= limit:
        size = max(1 << max(limit.bit_length(), 10), limit)
        mu = _mobius_upto(size).astype(np.float64)
        q = np.arange(size + 1, dtype=np.float64)
        q[0] = 1.0
        pref = np.cumsum(mu * q**-expo)
        pref.setflags(write=False)
        _mu_power_cache[expo] = pref
        cached = pref
    return cached


def _sigma_partial_regrouped(sieve: FactorSieve, s: float, n: int, R: int) -> float:
    z = zeta_real(s + 1.0)
    pref = _mu_power_prefix(s + 1.0, R)
    total = 0.0
    for d in divisors(factorize(sieve, n)):
        if d > R:
            break
        total += float(d) ** -s * pref[R // d]
    return z * total


def expansion_adaptive(
    sieve: FactorSieve,
    provider: CoefficientProvider,
    n: int,
    tol: float = 1e-6,
    start: int = 256,
    cap: Optional[int] = None,
) -> ExpansionSum:
    """Grow R by doubling until successive partial sums stabilise within tol.

    Stops once two consecutive doublings move the partial sum by at most
    tol/4 each.  Only decay providers qualify; conditional expansions have
    no usable truncation rule.
    """
    if provider.conditional:
        raise UsageError("adaptive truncation needs a provider with decay metadata")
    if tol <= 0:
        raise UsageError(f"tol must be positive, got {tol}")
    cap = min(cap, sieve.limit) if cap else sieve.limit

    if provider._sigma_s is not None:
        partial = lambda R: _sigma_partial_regrouped(sieve, provider._sigma_s, n, R)
    else:
        partial = lambda R: expansion_partial_sum(sieve, provider, n, R).value

    R = min(start, cap)
    value = partial(R)
    stable = 0
    while True:
        R_next = min(2 * R, cap)
        nxt = partial(R_next)
        stable = stable + 1 if abs(nxt - value) <= 0.25 * tol else 0
        value, R = nxt, R_next
        if stable >= 2:
            break
        if R >= cap:
            raise ConsistencyError(
                f"partial sums not stable within {tol} by R = {cap}"
            )
    sigma1_n = int(sigma_rational(factorize(sieve, n), 1))
    return ExpansionSum(value=value, tail_bound=_tail_bound(provider, sigma1_n, R), R=R)


def singular_series(sieve: FactorSieve, N: int, R: int) -> float:
    """Partial singular series sum_{r <= R} mu(r)**2 / phi(r)**2 * c_r(N).

    Absolutely convergent; summed in increasing r.  For even N the partial
    sums settle at 2 C2 prod_{p | N, p > 2} (p-1)/(p-2), the classical
    twin-product value; for odd N they approach zero.
    """
    if N < 2:
        raise UsageError(f"N must be >= 2, got {N}")
    if R < 1:
        raise UsageError(f"R must be >= 1, got {R}")
    if R > sieve.limit:
        raise UsageError(f"R={R} exceeds sieve limit {sieve.limit}")
    c = ramanujan_sum_table(sieve, N, R)
    mu = _mobius_upto(R)
    phi = _phi_upto(R).astype(np.float64)
    terms = np.where(mu[1:] != 0, c[1:].astype(np.float64) / phi[1:] ** 2, 0.0)
    return float(np.sum(terms))


@dataclass(frozen=True)
class OrthogonalityRecord:
    """Exact pair correlation of c_r and c_s against the diagonal main term."""

    exact: int
    main: int
    defect: int


def orthogonality_defect(
    sieve: FactorSieve, r: int, s: int, N: int, M: int
) -> OrthogonalityRecord:
    """sum_{1 <= n < M} c_r(n) c_s(N - n) against delta_{r,s} M c_r(N).

    Exact integer arithmetic throughout.  The summand is periodic in n
    with period lcm(r, s), so the range folds into one period plus a
    partial block; the folded sum equals the direct one exactly.
    """
    if r < 1 or s < 1:
        raise UsageError(f"need r, s >= 1, got r={r}, s={s}")
    if not isinstance(M, int):
        raise UsageError(f"M must be an integer, got {M!r}")
    if not 1 <= M <= N:
        raise UsageError(f"need 1 <= M <= N, got M={M}, N={N}")
    L = math.lcm(r, s)
    if L > 2**24:
        raise UsageError(f"lcm(r, s) = {L} is too large to fold")

    cr = np.array([ramanujan_sum(sieve, r, j) if j else ramanujan_sum(sieve, r, r)
                   for j in range(r)], dtype=np.int64)
    cs = np.array([ramanujan_sum(sieve, s, j) if j else ramanujan_sum(sieve, s, s)
                   for j in range(s)], dtype=np.int64)

    K = M - 1  # half-open range [1, M)
    j = np.arange(1, min(L, K) + 1, dtype=np.int64)
    block = cr[j % r] * cs[(N - j) % s]
    if K <= L:
        exact = int(block.sum())
    else:
        period_sum = int(block.sum())
        exact = (K // L) * period_sum + int(block[: K % L].sum())

    main = M * ramanujan_sum(sieve, r, N) if r == s else 0
    return OrthogonalityRecord(exact=exact, main=main, defect=exact - main)
