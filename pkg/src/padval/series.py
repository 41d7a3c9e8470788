"""The sums s_n = sum_{k<=n} (1/a^k + 1/(p-a)^k) p^k / k and the exact
identities used to bound their p-adic valuation from below."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .arith import INF, ParameterError, Rational, Valuation, lcm_upto, require_prime


@dataclass(frozen=True)
class SeriesParams:
    p: int
    a: int

    def __post_init__(self):
        require_prime(self.p)
        if not isinstance(self.a, int) or self.a % self.p == 0:
            raise ParameterError(f"a must be an integer not divisible by p={self.p}, got {self.a!r}")

    @property
    def b(self) -> int:
        """The partner p - a."""
        return self.p - self.a


class SeriesTerm(NamedTuple):
    k: int
    value: Fraction


class PrefixSum(NamedTuple):
    n: int
    value: Fraction


def term_r(params: SeriesParams, k: int) -> SeriesTerm:
    if k < 1:
        raise ParameterError(f"term index must be >= 1, got {k}")
    a, b, p = params.a, params.b, params.p
    return SeriesTerm(k, Fraction((a**k + b**k) * p**k, k * (a * b) ** k))


class PrefixSumStream:
    """Resumable producer of s_1, s_2, ...; each step is one rational addition.

    Single consumer. ``next(stream)`` advances; ``stream.n``/``stream.value``
    hold the last emitted sum (n = 0, value = 0 before the first step).
    """

    def __init__(self, params: SeriesParams):
        self.params = params
        self.n = 0
        self.value = Fraction(0)
        # a^k, b^k, p^k carried forward instead of recomputed
        self._ak = self._bk = self._pk = 1

    def __iter__(self):
        return self

    def __next__(self) -> PrefixSum:
        a, b, p = self.params.a, self.params.b, self.params.p
        k = self.n + 1
        self._ak *= a
        self._bk *= b
        self._pk *= p
        self.value += Fraction((self._ak + self._bk) * self._pk, k * self._ak * self._bk)
        self.n = k
        return PrefixSum(k, self.value)


def prefix_sums(params: SeriesParams, n_max: int) -> Iterator[PrefixSum]:
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    stream = PrefixSumStream(params)
    for _ in range(n_max):
        yield next(stream)


def prefix_sum(params: SeriesParams, n: int) -> Fraction:
    """s_n by a fresh fold of term_r (no stream state)."""
    return sum((term_r(params, k).value for k in range(1, n + 1)), Fraction(0))


def binomial_row(n: int) -> list[int]:
    """[C(n,0), ..., C(n,n)] by the running product C(n,k+1) = C(n,k)(n-k)/(k+1)."""
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def mansour_sides(x: Rational, y: Rational, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of

        sum_{k=0}^n x^k y^(n-k) / C(n,k)
          = (n+1) / ((x+y)(1/x+1/y)^(n+1)) * sum_{k=1}^{n+1} (x^k+y^k)(1/x+1/y)^k / k

    evaluated independently of each other.
    """
    x, y = Fraction(x), Fraction(y)
    if x == 0 or y == 0 or x + y == 0:
        raise ParameterError(f"need x, y nonzero with x + y != 0, got x={x}, y={y}")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")

    row = binomial_row(n)
    lhs = sum((x**k * y ** (n - k) / row[k] for k in range(n + 1)), Fraction(0))

    w = 1 / x + 1 / y
    inner = Fraction(0)
    wk = Fraction(1)
    for k in range(1, n + 2):
        wk *= w
        inner += (x**k + y**k) * wk / k
    rhs = (n + 1) * inner / ((x + y) * w ** (n + 1))
    return lhs, rhs


def verify_lcm_binom(n: int) -> bool:
    """lcm{C(n,0..n)} * (n+1) == lcm(1..n+1)."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return math.lcm(*binomial_row(n)) * (n + 1) == lcm_upto(n + 1)


def identity11_rhs(params: SeriesParams, n: int) -> Fraction:
    """p^(n+1) / (n (a b)^n) * sum_{k<n} a^k b^(n-1-k) / C(n-1,k), which equals s_n."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    a, b, p = params.a, params.b, params.p
    row = binomial_row(n - 1)
    # common denominator lcm of the row keeps the inner sum integral
    m = math.lcm(*row)
    inner = sum(a**k * b ** (n - 1 - k) * (m // row[k]) for k in range(n))
    return Fraction(p ** (n + 1) * inner, n * (a * b) ** n * m)


class IntPolynomial:
    """Dense polynomial with int coefficients, ``coeffs[i]`` multiplying X**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, i: int, c: int = 1) -> IntPolynomial:
        return cls([0] * i + [c])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, d in enumerate(other.coeffs):
                    out[i + j] += c * d
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, i: int) -> IntPolynomial:
        """Multiply by X**i."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * i + list(self.coeffs))

    def __call__(self, x):
        return eval_polynomial(self, x)


def vanishing_order(poly: IntPolynomial) -> Valuation:
    """Multiplicity of 0 as a root; INF for the zero polynomial."""
    for i, c in enumerate(poly.coeffs):
        if c:
            return i
    return INF


def eval_polynomial(poly: IntPolynomial, x: Rational):
    acc = 0
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def _linear_powers(a: int, n: int) -> list[IntPolynomial]:
    """[(X - a)**m for m in 0..n]."""
    step = IntPolynomial([-a, 1])
    out = [IntPolynomial([1])]
    for _ in range(n):
        out.append(out[-1] * step)
    return out


def clearing_polynomial(a: int, n: int) -> IntPolynomial:
    """R_n(X) * a^n (X-a)^n * lcm(1..n) as an integer polynomial, where
    R_n(X) = sum_{k<=n} (1/a^k + 1/(X-a)^k) X^k / k.

    Its value at X = p recovers s_n after dividing by a^n (p-a)^n lcm(1..n).
    """
    if a == 0:
        raise ParameterError("a must be nonzero")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    lcm = lcm_upto(n)
    lin = _linear_powers(a, n)
    acc = [0] * (2 * n + 1)
    for k in range(1, n + 1):
        scale = lcm // k
        left = scale * a ** (n - k)
        right = scale * a**n
        for i, c in enumerate(lin[n].coeffs):
            acc[i + k] += left * c
        for i, c in enumerate(lin[n - k].coeffs):
            acc[i + k] += right * c
    return IntPolynomial(acc)


def clearing_denominator(params: SeriesParams, n: int) -> int:
    """a^n (p-a)^n lcm(1..n), the factor separating P_n(p) from s_n."""
    return (params.a * params.b) ** n * lcm_upto(n)
