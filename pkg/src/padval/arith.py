"""Exact integer/rational helpers: p-adic valuation, lcm(1..n), floor logs,
primality of the base prime and the exact bound comparator.

Rationals are ``fractions.Fraction`` throughout; Python ints are already
arbitrary precision, so there is no separate big-integer type.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterator, Union


class ParameterError(ValueError):
    """Invalid (p, a, n, ...) input rejected at an API boundary."""


class _Infinite:
    """Valuation of zero. Compares above every int, never equal to one."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padval.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinite, ())


INF = _Infinite()

Valuation = Union[int, _Infinite]
Rational = Union[int, Fraction]


class BoundCmp(enum.Enum):
    ABOVE = "Above"
    EQUAL = "Equal"
    BELOW = "Below"

    def __str__(self):
        return self.value


def int_val(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n.

    Squares the divisor while it still divides, then walks back down, so a
    valuation v costs O(log v) big divisions instead of v.
    """
    if n == 0:
        raise ValueError("valuation of 0 is not finite")
    n = abs(n)
    if n % p:
        return 0
    powers = [p]
    while True:
        q, r = divmod(n, powers[-1] * powers[-1])
        if r:
            break
        powers.append(powers[-1] * powers[-1])
    v = 0
    for i in range(len(powers) - 1, -1, -1):
        q, r = divmod(n, powers[i])
        if not r:
            n = q
            v += 1 << i
    return v


def val_p(r: Rational, p: int) -> Valuation:
    if r == 0:
        return INF
    if isinstance(r, int):
        return int_val(r, p)
    r = Fraction(r)
    num, den = r.numerator, r.denominator
    # lowest terms: at most one side is divisible by p
    if num % p == 0:
        return int_val(num, p)
    if den % p == 0:
        return -int_val(den, p)
    return 0


def lcm_upto(n: int) -> int:
    if n < 1:
        raise ParameterError(f"lcm_upto needs n >= 1, got {n}")
    return math.lcm(*range(1, n + 1))


def lcm_prefix(n_max: int) -> Iterator[int]:
    """Yield lcm(1..n) for n = 1..n_max by a running fold."""
    acc = 1
    for n in range(1, n_max + 1):
        acc = math.lcm(acc, n)
        yield acc


def floor_log(p: int, n: int) -> int:
    """Largest e with p**e <= n."""
    if n < 1:
        raise ParameterError(f"floor_log needs n >= 1, got {n}")
    e, q = 0, p
    while q <= n:
        q *= p
        e += 1
    return e


def bound_compare(nu: int, n: int, p: int) -> BoundCmp:
    """Compare nu with (n+1) - log_p((n+1)/2) without floating point.

    nu vs (n+1) - log_p((n+1)/2) has the opposite sign of 2*p**(n+1-nu) vs n+1.
    """
    if nu is INF:
        raise ValueError("bound_compare got an infinite valuation (s_n = 0)")
    if n < 1:
        raise ParameterError(f"bound_compare needs n >= 1, got {n}")
    e = n + 1 - nu
    if e < 0:
        return BoundCmp.ABOVE
    lhs = 2 * p**e
    if lhs < n + 1:
        return BoundCmp.ABOVE
    if lhs == n + 1:
        return BoundCmp.EQUAL
    return BoundCmp.BELOW


# Deterministic Miller-Rabin witnesses for every n < 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n >= 1 << 64:
        raise ParameterError("primality of p >= 2**64 is not certified")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise ParameterError(f"p must be an integer, got {p!r}")
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    return p


def format_rational(r: Rational) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"
