import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padval.arith import INF, ParameterError, floor_log, lcm_upto, val_p
from padval.series import (
    IntPolynomial,
    PrefixSumStream,
    SeriesParams,
    binomial_row,
    clearing_denominator,
    clearing_polynomial,
    eval_polynomial,
    identity11_rhs,
    mansour_sides,
    prefix_sum,
    prefix_sums,
    term_r,
    vanishing_order,
    verify_lcm_binom,
)

from oracles import naive_lcm, naive_mansour_lhs, naive_sum, naive_term, rational_function_r

PARAMS = [(2, 1), (2, 3), (2, -1), (3, 1), (3, 2), (3, -1), (3, 4), (5, 2), (5, 7), (7, 3), (11, -5)]


def test_params_validation():
    with pytest.raises(ParameterError):
        SeriesParams(4, 1)
    with pytest.raises(ParameterError):
        SeriesParams(3, 6)
    with pytest.raises(ParameterError):
        SeriesParams(5, 0)
    assert SeriesParams(5, -3).b == 8


@pytest.mark.parametrize(
    "p, a, k, expected",
    [(2, 1, 1, Fraction(4)), (3, 1, 1, Fraction(9, 2)), (3, 2, 1, Fraction(9, 2)), (2, 1, 4, Fraction(8))],
)
def test_term_examples(p, a, k, expected):
    assert term_r(SeriesParams(p, a), k).value == expected


def test_term_rejects_k0():
    with pytest.raises(ParameterError):
        term_r(SeriesParams(2, 1), 0)


@pytest.mark.parametrize("p, a", PARAMS)
def test_terms_match_naive(p, a):
    params = SeriesParams(p, a)
    for k in range(1, 40):
        assert term_r(params, k).value == naive_term(p, a, k)


def test_prefix_sum_examples():
    sums = list(prefix_sums(SeriesParams(2, 1), 4))
    assert [s.value for s in sums] == [4, 8, Fraction(40, 3), Fraction(64, 3)]
    assert next(prefix_sums(SeriesParams(3, 1), 1)).value == Fraction(9, 2)


@pytest.mark.parametrize("p, a", PARAMS)
def test_stream_matches_fresh_fold_and_naive(p, a):
    params = SeriesParams(p, a)
    for n, s in prefix_sums(params, 60):
        if n % 7 == 0 or n < 5:
            assert s == prefix_sum(params, n) == naive_sum(p, a, n)
    assert next(prefix_sums(params, 1)).value == term_r(params, 1).value


def test_stream_is_resumable():
    stream = PrefixSumStream(SeriesParams(5, 2))
    first = [next(stream) for _ in range(10)]
    more = [next(stream) for _ in range(5)]
    assert stream.n == 15
    assert [s.n for s in first + more] == list(range(1, 16))
    assert more[-1].value == naive_sum(5, 2, 15)


@pytest.mark.parametrize("p, a", [(2, 1), (3, 1), (5, 2), (7, -3), (11, 13)])
def test_symmetry_a_to_p_minus_a(p, a):
    left = [s.value for s in prefix_sums(SeriesParams(p, a), 80)]
    right = [s.value for s in prefix_sums(SeriesParams(p, p - a), 80)]
    assert left == right


@pytest.mark.parametrize("p, a", PARAMS)
def test_first_method_bound(p, a):
    for n, s in prefix_sums(SeriesParams(p, a), 150):
        assert val_p(s, p) >= n + 1 - floor_log(p, n)


def test_binomial_row():
    for n in range(60):
        assert binomial_row(n) == [math.comb(n, k) for k in range(n + 1)]


@pytest.mark.parametrize(
    "x, y, n, expected",
    [(1, 1, 1, 2), (1, 2, 2, 6), (Fraction(3, 7), Fraction(-5, 2), 0, 1)],
)
def test_mansour_examples(x, y, n, expected):
    lhs, rhs = mansour_sides(x, y, n)
    assert lhs == rhs == expected


@pytest.mark.parametrize("x, y", [(0, 1), (1, 0), (2, -2), (Fraction(1, 3), Fraction(-1, 3))])
def test_mansour_domain(x, y):
    with pytest.raises(ParameterError):
        mansour_sides(x, y, 3)


small_rationals = st.builds(Fraction, st.integers(-50, 50).filter(bool), st.integers(1, 50))


@settings(max_examples=150, deadline=None)
@given(small_rationals, small_rationals, st.integers(0, 30))
def test_mansour_identity_property(x, y, n):
    if x + y == 0:
        return
    lhs, rhs = mansour_sides(x, y, n)
    assert lhs == rhs == naive_mansour_lhs(x, y, n)


@pytest.mark.parametrize("n", [0, 4, 7])
def test_lcm_binom_examples(n):
    assert verify_lcm_binom(n)


def test_lcm_binom_by_brute_force():
    for n in range(0, 60):
        row_lcm = 1
        for k in range(n + 1):
            row_lcm = math.lcm(row_lcm, math.comb(n, k))
        assert verify_lcm_binom(n) == (row_lcm * (n + 1) == naive_lcm(n + 1)) is True


def test_lcm_binom_up_to_500():
    assert all(verify_lcm_binom(n) for n in range(501))


@pytest.mark.parametrize("p, a, n, expected", [(2, 1, 3, Fraction(40, 3)), (3, 1, 1, Fraction(9, 2))])
def test_identity11_examples(p, a, n, expected):
    assert identity11_rhs(SeriesParams(p, a), n) == expected


@pytest.mark.parametrize("p, a", PARAMS)
def test_identity11_equals_prefix_sum(p, a):
    params = SeriesParams(p, a)
    for n, s in prefix_sums(params, 80):
        assert identity11_rhs(params, n) == s


def test_polynomial_basics():
    p = IntPolynomial([0, 0, 1, 0, 0])
    assert p.coeffs == (0, 0, 1) and p.degree == 2
    assert IntPolynomial([0, 0]).is_zero() and IntPolynomial().degree == -1
    assert IntPolynomial([1, 1]) * IntPolynomial([-1, 1]) == IntPolynomial([-1, 0, 1])
    assert IntPolynomial([1, 2]) + IntPolynomial([-1, -2, 3]) == IntPolynomial.monomial(2, 3)
    assert 3 * IntPolynomial([1, 2]) == IntPolynomial([3, 6])
    assert IntPolynomial([1]).shift(2) == IntPolynomial.monomial(2)


def test_vanishing_order_examples():
    assert vanishing_order(IntPolynomial.monomial(2)) == 2
    assert vanishing_order(IntPolynomial()) is INF
    assert vanishing_order(IntPolynomial([5, 1])) == 0


def test_eval_examples():
    assert eval_polynomial(IntPolynomial.monomial(2), 3) == 9
    assert eval_polynomial(IntPolynomial(), Fraction(7, 3)) == 0
    assert eval_polynomial(IntPolynomial([1, -1, 2]), Fraction(1, 2)) == 1
    poly = clearing_polynomial(1, 3)
    assert Fraction(eval_polynomial(poly, 2), 1**3 * (2 - 1) ** 3 * lcm_upto(3)) == Fraction(40, 3)


def test_clearing_polynomial_examples():
    assert clearing_polynomial(1, 1) == IntPolynomial.monomial(2)
    assert clearing_polynomial(1, 2) == IntPolynomial.monomial(4)
    c = clearing_polynomial(2, 1).coeffs
    assert c[0] == c[1] == 0
    assert vanishing_order(clearing_polynomial(1, 2)) == 4
    with pytest.raises(ParameterError):
        clearing_polynomial(0, 3)


@pytest.mark.parametrize("a", [1, 2, 3, -1, 5, -7])
def test_clearing_polynomial_matches_rational_function(a):
    # degree <= 2n, so agreement at 2n+1 points pins the polynomial down
    for n in (1, 2, 5, 9):
        poly = clearing_polynomial(a, n)
        assert poly.degree <= 2 * n
        points = [Fraction(i, 3) for i in range(-3 * n - 3, 3 * n + 4) if Fraction(i, 3) not in (0, a)]
        for x in points[: 2 * n + 1]:
            expected = rational_function_r(a, n, x) * a**n * (x - a) ** n * lcm_upto(n)
            assert eval_polynomial(poly, x) == expected


@pytest.mark.parametrize("a", [1, 2, 3, -1, 5])
def test_vanishing_order_at_least_n_plus_one(a):
    for n in range(1, 61):
        assert vanishing_order(clearing_polynomial(a, n)) >= n + 1


@pytest.mark.parametrize("p, a", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2), (5, -1)])
def test_clearing_polynomial_recovers_s_n(p, a):
    params = SeriesParams(p, a)
    for n, s in prefix_sums(params, 40):
        poly = clearing_polynomial(a, n)
        assert Fraction(eval_polynomial(poly, p), clearing_denominator(params, n)) == s


def test_random_params_identity11_seeded():
    rng = random.Random(11)
    for _ in range(20):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        a = rng.choice([x for x in range(-30, 31) if x % p])
        params = SeriesParams(p, a)
        n = rng.randint(1, 40)
        assert identity11_rhs(params, n) == naive_sum(p, a, n)
