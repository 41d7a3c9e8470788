"""Tail-min lower bounds for valuations of partial sums, the optimal bound
(n+1) - log_p((n+1)/2) for s_n, and its equality cases n = 2 p^alpha - 1.

Every comparison with a logarithmic quantity goes through an integer
predicate; nothing here touches floating point.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from .arith import (
    INF,
    BoundCmp,
    ParameterError,
    bound_compare,
    floor_log,
    int_val,
    val_p,
)
from .series import PrefixSumStream, SeriesParams, term_r


class OracleContractError(Exception):
    """A term oracle broke its lower-bound guarantee (or strictness of ell)."""

    def __init__(self, k: int, detail: str):
        super().__init__(f"k={k}: {detail}")
        self.k = k
        self.detail = detail


class ContradictionError(ArithmeticError):
    """s_n came out as exactly zero."""


@dataclass
class Violation:
    anchor: str
    n: int
    detail: str

    def as_dict(self) -> dict:
        return {"anchor": self.anchor, "n": self.n, "detail": self.detail}


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def ell_compare(p: int, k: int, c: int) -> int:
    """Sign of ell_k - c for ell_k = k - log_p(k/2): +1, 0 or -1.

    ell_k > c  iff  p^(k-c) > k/2  iff  2 p^(k-c) > k.
    """
    if k < 2:
        raise ParameterError(f"ell is indexed from 2, got k={k}")
    e = k - c
    if e >= 0:
        return _sign(2 * p**e - k)
    return _sign(2 - k * p ** (-e))


def ell_order(p: int, j: int, k: int) -> int:
    """Sign of ell_j - ell_k: ell_j > ell_k iff k p^(j-k) > j (for j > k)."""
    if j == k:
        return 0
    if j < k:
        return -ell_order(p, k, j)
    return _sign(k * p ** (j - k) - j)


def _val_sum_of_powers(a: int, b: int, k: int, p: int) -> int:
    """nu_p(a^k + b^k), assumed nonzero. Works mod p^m with m doubling until the
    residue is nonzero, so the cost tracks the valuation, not the size of a^k."""
    m = 8
    while True:
        mod = p**m
        r = (pow(a, k, mod) + pow(b, k, mod)) % mod
        if r:
            return int_val(r, p)
        if m > 4 * k * max(abs(a), abs(b), 2).bit_length() + 64:
            # past |a^k + b^k| itself; the sum really is 0
            raise ContradictionError(f"a^k + b^k = 0 for a={a}, b={b}, k={k}")
        m *= 2


def term_valuation(params: SeriesParams, k: int, check: bool = False) -> int:
    """nu_p(r_k) = nu_p(a^k + (p-a)^k) + k - nu_p(k)."""
    if k < 1:
        raise ParameterError(f"term index must be >= 1, got {k}")
    v = _val_sum_of_powers(params.a, params.b, k, params.p) + k - int_val(k, params.p)
    if check:
        direct = val_p(term_r(params, k).value, params.p)
        if direct != v:
            raise AssertionError(f"term valuation mismatch at k={k}: {v} vs {direct}")
    return v


class TermOracle:
    """k -> nu_p(r_k) together with a strictly increasing, unbounded lower
    bound ell_k (k >= 2), exposed only through exact comparisons."""

    def valuation(self, k: int) -> int:
        raise NotImplementedError

    def ell_cmp(self, k: int, c: int) -> int:
        """Sign of ell_k - c."""
        raise NotImplementedError

    def ell_increases(self, k: int) -> bool:
        """ell_{k+1} > ell_k."""
        raise NotImplementedError


class SeriesOracle(TermOracle):
    """The terms r_k(p, a) with ell_k = k - log_p(k/2)."""

    def __init__(self, params: SeriesParams):
        self.params = params
        self._cache: dict[int, int] = {}

    def valuation(self, k):
        v = self._cache.get(k)
        if v is None:
            v = self._cache[k] = term_valuation(self.params, k)
        return v

    def ell_cmp(self, k, c):
        return ell_compare(self.params.p, k, c)

    def ell_increases(self, k):
        return ell_order(self.params.p, k + 1, k) > 0


class IntegerEllOracle(TermOracle):
    """Oracle from plain callables with an integer-valued ell. Handy for
    building other sequences and adversarial cases."""

    def __init__(self, valuation: Callable[[int], int], ell: Callable[[int], int]):
        self._valuation = valuation
        self._ell = ell

    def valuation(self, k):
        return self._valuation(k)

    def ell_cmp(self, k, c):
        return _sign(self._ell(k) - c)

    def ell_increases(self, k):
        return self._ell(k + 1) > self._ell(k)


class TailMin(NamedTuple):
    value: int
    witness: int
    window: int  # last index scanned


def tail_min(oracle: TermOracle, n: int, widen: int = 1) -> TailMin:
    """min_{k >= n+1} nu_p(r_k), exactly.

    Scans k = n+1, n+2, ... until ell_{K+1} exceeds the running minimum; past
    K every term is bounded below by ell and cannot lower the minimum. With
    ``widen`` > 1 the scan keeps going to widen*K as a soundness check.
    Raises OracleContractError if a scanned term violates ell_k <= nu_p(r_k)
    or ell fails to increase.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    best: Optional[int] = None
    witness = -1
    k = n
    stop = None
    while stop is None or k < stop:
        k += 1
        v = oracle.valuation(k)
        if k >= 2:
            if oracle.ell_cmp(k, v) > 0:
                raise OracleContractError(k, f"ell_{k} exceeds nu_p(r_{k}) = {v}")
            if not oracle.ell_increases(k):
                raise OracleContractError(k, f"ell is not strictly increasing at {k}")
        if best is None or v < best:
            best, witness = v, k
        if stop is None and oracle.ell_cmp(k + 1, best) > 0:
            stop = max(k, widen * k)
    return TailMin(best, witness, k)


def check_theorem2_prefix(
    oracle: TermOracle, sums: Iterable[tuple[int, int]], n_max: int
) -> list[Violation]:
    """Check nu(s_n) >= tail_min(n) >= ell_{n+1} and the equality equivalence
    nu(s_n) = ell_{n+1} <=> tail_min(n) = ell_{n+1} for n <= n_max."""
    out: list[Violation] = []
    for n, nu in sums:
        if n > n_max:
            break
        if nu is INF:
            out.append(Violation("Thm2/Eq2", n, "partial sum is exactly 0"))
            continue
        try:
            tm = tail_min(oracle, n)
        except OracleContractError as e:
            out.append(Violation("Thm2/Eq1", n, f"oracle contract: {e}"))
            continue
        if nu < tm.value:
            out.append(Violation("Thm2/Eq2", n, f"nu={nu} < tail_min={tm.value}"))
        if oracle.ell_cmp(n + 1, tm.value) > 0:
            out.append(Violation("Thm2/Eq2", n, f"tail_min={tm.value} < ell_{n + 1}"))
        nu_eq = oracle.ell_cmp(n + 1, nu) == 0
        tm_eq = oracle.ell_cmp(n + 1, tm.value) == 0
        if nu_eq != tm_eq:
            out.append(
                Violation("Thm2/Eq3", n, f"equality mismatch: nu={nu}, tail_min={tm.value}")
            )
    return out


def equality_case(p: int, n: int) -> Optional[int]:
    """alpha with n + 1 = 2 p^alpha, or None."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if (n + 1) % 2:
        return None
    m = (n + 1) // 2
    alpha = 0
    while m % p == 0:
        m //= p
        alpha += 1
    return alpha if m == 1 else None


@dataclass
class BoundReport:
    n: int
    value: Fraction
    nu: int
    cmp: BoundCmp
    tail_min: int
    tail_witness: int
    equality_predicted: bool
    alpha: Optional[int]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _verdict(p: int, a: int, n: int, value: Fraction, oracle: Optional[SeriesOracle] = None) -> BoundReport:
    params = SeriesParams(p, a)
    if value == 0:
        raise ContradictionError(f"s_{n} = 0 for p={p}, a={a}")
    nu = val_p(value, p)
    cmp = bound_compare(nu, n, p)
    tm = tail_min(oracle or SeriesOracle(params), n)
    alpha = equality_case(p, n)
    problems = []
    if cmp is BoundCmp.BELOW:
        problems.append("valuation below (n+1) - log_p((n+1)/2)")
    if (cmp is BoundCmp.EQUAL) != (alpha is not None):
        problems.append("equality does not match n = 2p^alpha - 1")
    if nu < tm.value:
        problems.append(f"nu={nu} below tail_min={tm.value}")
    if (cmp is BoundCmp.EQUAL) != (ell_compare(p, n + 1, tm.value) == 0):
        problems.append("Equal verdict disagrees with tail_min = ell_{n+1}")
    return BoundReport(n, value, nu, cmp, tm.value, tm.witness, alpha is not None, alpha, problems)


def _verdict_star(args):
    return _verdict(*args)


def check_theorem1(params: SeriesParams, n_max: int, jobs: int = 1) -> Iterator[BoundReport]:
    """One BoundReport per n <= n_max, in order.

    The prefix sums are produced sequentially; with jobs > 1 the per-n
    verdicts (valuation, comparison, tail-min) run in a process pool.
    """
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    stream = PrefixSumStream(params)
    items = ((params.p, params.a, n, s) for n, s in (next(stream) for _ in range(n_max)))
    if jobs <= 1:
        oracle = SeriesOracle(params)
        for p, a, n, s in items:
            yield _verdict(p, a, n, s, oracle)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_verdict_star, items, chunksize=max(1, n_max // (4 * jobs)))


def dubickas_compare(mu: int, n: int) -> BoundCmp:
    """mu vs (n+1) - log_2(n+1): mu is above iff 2^(n+1-mu) < n+1."""
    e = n + 1 - mu
    if e < 0:
        return BoundCmp.ABOVE
    lhs = 2**e
    if lhs < n + 1:
        return BoundCmp.ABOVE
    return BoundCmp.EQUAL if lhs == n + 1 else BoundCmp.BELOW


def dubickas_corollary(n_max: int) -> list[Violation]:
    """The p = 2, a = 1 case for t_n = sum_{k<=n} 2^k/k = s_n(2, 1) / 2:
    nu_2(t_n) >= (n+1) - log_2(n+1), tight iff n = 2^alpha - 1, and the
    weaker nu_2(t_n) >= n - floor(log_2 n)."""
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    out: list[Violation] = []
    stream = PrefixSumStream(SeriesParams(2, 1))
    t = Fraction(0)
    pk = 1
    for n in range(1, n_max + 1):
        pk *= 2
        t += Fraction(pk, n)
        _, s = next(stream)
        mu = val_p(t, 2)
        if val_p(s, 2) != mu + 1:
            out.append(Violation("Eqint2", n, f"nu_2(t_n)={mu} but nu_2(s_n)={val_p(s, 2)}"))
        cmp = dubickas_compare(mu, n)
        tight = (n + 1) & n == 0
        if cmp is BoundCmp.BELOW:
            out.append(Violation("Eqint2", n, f"nu_2={mu} below (n+1) - log_2(n+1)"))
        elif (cmp is BoundCmp.EQUAL) != tight:
            out.append(Violation("Eqint2", n, f"equality={cmp is BoundCmp.EQUAL}, n+1 power of 2={tight}"))
        if mu < n - floor_log(2, n):
            out.append(Violation("Eqint1", n, f"nu_2={mu} < n - floor(log_2 n)"))
    return out
