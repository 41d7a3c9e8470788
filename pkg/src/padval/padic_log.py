"""Finite-precision p-adic logarithm on rational arguments.

-L_p(1 - x) = sum_{k>=1} x^k / k converges whenever nu_p(x) >= 1. Modulo p^N
only finitely many terms matter, so every result here is an exact residue.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import (
    INF,
    BoundCmp,
    ParameterError,
    Rational,
    bound_compare,
    floor_log,
    require_prime,
    val_p,
)
from .series import PrefixSumStream, SeriesParams

DEFAULT_PRECISION = 12


@dataclass(frozen=True)
class TruncatedPadic:
    p: int
    N: int
    residue: int

    def __post_init__(self):
        if self.N < 1:
            raise ParameterError(f"precision must be >= 1, got {self.N}")
        object.__setattr__(self, "residue", self.residue % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _same(self, other: TruncatedPadic):
        if (self.p, self.N) != (other.p, other.N):
            raise ValueError(f"precision mismatch: ({self.p}, {self.N}) vs ({other.p}, {other.N})")

    def __add__(self, other: TruncatedPadic) -> TruncatedPadic:
        self._same(other)
        return TruncatedPadic(self.p, self.N, self.residue + other.residue)

    def __sub__(self, other: TruncatedPadic) -> TruncatedPadic:
        self._same(other)
        return TruncatedPadic(self.p, self.N, self.residue - other.residue)

    def __mul__(self, other: TruncatedPadic) -> TruncatedPadic:
        self._same(other)
        return TruncatedPadic(self.p, self.N, self.residue * other.residue)

    def __neg__(self) -> TruncatedPadic:
        return TruncatedPadic(self.p, self.N, -self.residue)

    def reduce(self, N: int) -> TruncatedPadic:
        if N > self.N:
            raise ValueError(f"cannot raise precision from {self.N} to {N}")
        return TruncatedPadic(self.p, N, self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0


def to_truncated(r: Rational, p: int, N: int) -> TruncatedPadic:
    r = Fraction(r)
    if r.denominator % p == 0:
        raise ParameterError(f"{r} is not a {p}-adic integer")
    mod = p**N
    return TruncatedPadic(p, N, r.numerator * pow(r.denominator, -1, mod))


def truncation_index(p: int, v: int, N: int) -> int:
    """Smallest K >= 2 such that every omitted term x^k/k (k > K) of the log
    series has valuation >= N, given nu_p(x) = v >= 1.

    Uses nu_p(x^k/k) >= k*v - floor(log_p k), which is nondecreasing in k.
    """
    if v < 1:
        raise ParameterError(f"log series needs nu_p(x) >= 1, got {v}")
    k = 1
    while k * v - floor_log(p, k) < N:
        k += 1
    # every index >= k is safe
    return max(2, k - 1)


def _log_argument_valuation(x: Fraction, p: int) -> Optional[int]:
    v = val_p(x, p)
    if v is INF:
        return None
    if v < 1:
        raise ParameterError(f"log1m needs nu_p(x) >= 1, got nu_{p}({x}) = {v}")
    return v


def log1m_rational(x: Rational, p: int, N: int, extra_terms: int = 0) -> Fraction:
    """The exact partial sum sum_{k<=K} x^k/k with K = truncation_index(...)."""
    require_prime(p)
    x = Fraction(x)
    v = _log_argument_valuation(x, p)
    if v is None:
        return Fraction(0)
    K = truncation_index(p, v, N) + extra_terms
    total = Fraction(0)
    xk = Fraction(1)
    for k in range(1, K + 1):
        xk *= x
        term = xk / k
        if val_p(term, p) < 0:
            raise AssertionError(f"log series term {k} is not a {p}-adic integer")
        total += term
    return total


def log1m(x: Rational, p: int, N: int = DEFAULT_PRECISION, extra_terms: int = 0) -> TruncatedPadic:
    """-L_p(1 - x) mod p^N for rational x with nu_p(x) >= 1."""
    return to_truncated(log1m_rational(x, p, N, extra_terms), p, N)


def log_p(u: Rational, p: int, N: int = DEFAULT_PRECISION) -> TruncatedPadic:
    """L_p(u) mod p^N for u = 1 (mod p)."""
    return -log1m(1 - Fraction(u), p, N)


def verify_functional_eq(u: Rational, v: Rational, p: int, N: int = DEFAULT_PRECISION) -> bool:
    """L_p(uv) == L_p(u) + L_p(v) mod p^N."""
    require_prime(p)
    u, v = Fraction(u), Fraction(v)
    for w in (u, v):
        if w == 0 or val_p(w - 1, p) < 1:
            raise ParameterError(f"need nu_p({w} - 1) >= 1")
    return log_p(u * v, p, N) == log_p(u, p, N) + log_p(v, p, N)


@dataclass
class Eq14Certificate:
    """Finite-precision evidence that s_n -> 0 p-adically.

    ``n0`` is empirical: the smallest n from which every scanned s_n has
    nu_p >= N. ``bound_index`` is the first n where (n+1) - log_p((n+1)/2)
    reaches N, past which the optimal bound forces nu_p(s_n) >= N.
    """

    params: SeriesParams
    N: int
    window: int
    n0: int
    bound_index: int
    log_sum: TruncatedPadic
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _bound_index(p: int, N: int) -> int:
    n = 1
    while bound_compare(N, n, p) is BoundCmp.ABOVE:
        n += 1
    return n


def verify_eq14(params: SeriesParams, N: int, window: int = 50) -> Eq14Certificate:
    if N < 1:
        raise ParameterError(f"precision must be >= 1, got {N}")
    p, a, b = params.p, params.a, params.b
    problems = []

    # the two log arguments multiply to exactly 1
    if Fraction(a - p, a) * Fraction(-a, p - a) != 1:
        problems.append("(a-p)/a * (-a)/(p-a) != 1")
    # sum_k r_k = -L_p(1 - p/a) - L_p(1 - p/(p-a)) = -L_p(1) = 0
    log_sum = log1m(Fraction(p, a), p, N) + log1m(Fraction(p, b), p, N)
    if not log_sum.is_zero():
        problems.append(f"log1m(p/a) + log1m(p/(p-a)) = {log_sum.residue} mod {p}^{N}")

    bound_index = _bound_index(p, N)
    stream = PrefixSumStream(params)
    last_low = 0
    for _ in range(bound_index + window):
        n, s = next(stream)
        nu = val_p(s, p)
        if nu < N:
            last_low = n
            if n >= bound_index:
                problems.append(f"nu_p(s_{n}) = {nu} < {N} past the bound index {bound_index}")
    n0 = last_low + 1
    return Eq14Certificate(params, N, window, n0, bound_index, log_sum, problems)
