"""Exact additive and shifted convolution sums, plus the lattice oracle.

Both boundary conventions are first-class and must be chosen explicitly:
"half_open" sums over 1 <= n < M, "closed" over 1 <= n <= M.  M may be
real; the effective index ranges are n <= ceil(M) - 1 and n <= floor(M).
Integer sums are exact: the fast path accumulates in int64 only after
proving the worst-case total fits, otherwise it falls back to Python's
arbitrary-precision integers.  Real sums are reduced in fixed chunks of
2**16 summands combined in index order, so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import ArithTable
from .errors import UsageError

__all__ = [
    "ConvolutionSpec",
    "additive_convolution",
    "divisor_additive_convolution",
    "shifted_divisor_convolution",
    "lattice_count_S",
    "tau_exact",
]

_CHUNK = 1 << 16
_LATTICE_CAP = 10_000
_TAU_CAP = 10_000_000.0


@dataclass(frozen=True)
class ConvolutionSpec:
    """Range and mode of one additive convolution sum_n f(n) g(N - n)."""

    N: int
    M: float
    boundary: str
    value_mode: str = "exact_integer"

    def __post_init__(self):
        if self.N < 2:
            raise UsageError(f"N must be >= 2, got {self.N}")
        if self.boundary not in ("half_open", "closed"):
            raise UsageError(f"boundary must be 'half_open' or 'closed', got {self.boundary!r}")
        if self.value_mode not in ("exact_integer", "real"):
            raise UsageError(f"value_mode must be 'exact_integer' or 'real', got {self.value_mode!r}")
        if not 1 <= self.M <= self.N:
            raise UsageError(f"M must lie in [1, N], got M={self.M}, N={self.N}")
        if self.boundary == "closed" and self.M > self.N - 1:
            raise UsageError("closed boundary requires M <= N - 1 so N - n >= 1 everywhere")

    @property
    def last_index(self) -> int:
        """Largest summation index n; 0 means the range is empty."""
        if self.boundary == "closed":
            return math.floor(self.M)
        return math.ceil(self.M) - 1


def _chunked_real_sum(values: np.ndarray) -> float:
    total = 0.0
    for i in range(0, len(values), _CHUNK):
        total += float(np.sum(values[i : i + _CHUNK]))
    return total


def _exact_int_sum(fa: np.ndarray, ga: np.ndarray) -> int:
    k = len(fa)
    if k == 0:
        return 0
    bound = k * int(np.abs(fa).max()) * int(np.abs(ga).max())
    if bound < 2**62:
        total = 0
        for i in range(0, k, _CHUNK):
            total += int(
                np.dot(fa[i : i + _CHUNK].astype(np.int64), ga[i : i + _CHUNK].astype(np.int64))
            )
        return total
    # values too large for 64-bit accumulation: exact arbitrary precision
    return sum(int(a) * int(b) for a, b in zip(fa.tolist(), ga.tolist()))


def additive_convolution(f: ArithTable, g: ArithTable, spec: ConvolutionSpec):
    """sum f(n) g(N - n) over the range selected by spec.

    Returns a Python int in exact_integer mode, a float in real mode.
    """
    k = spec.last_index
    if k < 1:
        return 0 if spec.value_mode == "exact_integer" else 0.0
    if f.N < k:
        raise UsageError(f"f table covers 1..{f.N}, need 1..{k}")
    if g.N < spec.N - 1:
        raise UsageError(f"g table covers 1..{g.N}, need 1..{spec.N - 1}")
    fa = f.values[1 : k + 1]
    ga = g.values[spec.N - 1 : spec.N - k - 1 : -1]
    if spec.value_mode == "exact_integer":
        if not (f.is_integer and g.is_integer):
            raise UsageError("exact_integer mode requires integer-valued tables")
        return _exact_int_sum(fa, ga)
    return _chunked_real_sum(fa.astype(np.float64) * ga.astype(np.float64))


def divisor_additive_convolution(dtable: ArithTable, N: int, M: float, boundary: str) -> int:
    """sum d(n) d(N - n), exact, using a precomputed divisor table."""
    if dtable.kind != "divisor":
        raise UsageError(f"need a divisor table, got kind {dtable.kind!r}")
    spec = ConvolutionSpec(N=N, M=M, boundary=boundary)
    return additive_convolution(dtable, dtable, spec)


def shifted_divisor_convolution(dtable: ArithTable, N: int, h: int) -> int:
    """sum_{n <= N} d(n) d(n + h), exact."""
    if dtable.kind != "divisor":
        raise UsageError(f"need a divisor table, got kind {dtable.kind!r}")
    if N < 1 or h < 1:
        raise UsageError(f"need N >= 1 and h >= 1, got N={N}, h={h}")
    if dtable.N < N + h:
        raise UsageError(f"divisor table covers 1..{dtable.N}, need 1..{N + h}")
    return _exact_int_sum(dtable.values[1 : N + 1], dtable.values[1 + h : N + h + 1])


_pair_counts: dict = {}


def _divisor_pairs(k: int) -> int:
    # ordered pairs (l, r) with l * r = k, counted by trial division
    cnt = 0
    for j in range(1, math.isqrt(k) + 1):
        if k % j == 0:
            cnt += 1 if j * j == k else 2
    return cnt


def lattice_count_S(N: int, M: float) -> int:
    """|{(l, r, m, s) in N^4 : l r + m s = N, m s <= M}|.

    Enumerates (m, s) directly and counts the (l, r) factor pairs of
    N - m s by trial division, independent of any sieve.  Equals the
    closed-boundary divisor convolution up to M (the constraint never
    binds past n = N - 1).  Capped at N <= 10**4.
    """
    if N < 2:
        raise UsageError(f"N must be >= 2, got {N}")
    if not 1 <= M <= N:
        raise UsageError(f"M must lie in [1, N], got M={M}")
    if N > _LATTICE_CAP:
        raise UsageError(f"lattice enumeration is capped at N <= {_LATTICE_CAP}")
    cache = _pair_counts
    total = 0
    for m in range(1, int(M) + 1):
        for s in range(1, int(M / m) + 1):
            rem = N - m * s
            if rem < 1:
                continue
            pairs = cache.get(rem)
            if pairs is None:
                pairs = cache[rem] = _divisor_pairs(rem)
            total += pairs
    return total


def tau_exact(y: float) -> float:
    """sum over coprime pairs (lam, mu) with lam * mu <= y of 1/(lam * mu).

    Deterministic order: lam outer ascending, mu inner ascending.
    O(y log y) terms; capped at y <= 10**7.
    """
    if y < 1:
        raise UsageError(f"y must be >= 1, got {y}")
    if y > _TAU_CAP:
        raise UsageError(f"tau_exact is capped at y <= {_TAU_CAP:g}")
    total = 0.0
    gcd = math.gcd
    for lam in range(1, int(y) + 1):
        mmax = int(y / lam)
        if mmax == 1:
            total += 1.0 / lam
        elif mmax == 2:
            total += 1.0 / lam + (0.5 / lam if lam % 2 else 0.0)
        elif mmax < 16:
            inv = 1.0 / lam
            for m in range(1, mmax + 1):
                if gcd(lam, m) == 1:
                    total += inv / m
        else:
            m = np.arange(1, mmax + 1, dtype=np.int64)
            cop = m[np.gcd(m, lam) == 1]
            total += float(np.sum(1.0 / (lam * cop.astype(np.float64))))
    return total
