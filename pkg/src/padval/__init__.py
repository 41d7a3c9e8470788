"""Exact p-adic valuations of sum_{k<=n} (1/a^k + 1/(p-a)^k) p^k / k and
machine checks of the bounds and identities around them."""

from .arith import INF, BoundCmp, ParameterError, bound_compare, floor_log, lcm_upto, val_p
from .bounds import (
    BoundReport,
    TermOracle,
    check_theorem1,
    check_theorem2_prefix,
    dubickas_corollary,
    ell_compare,
    equality_case,
    tail_min,
    term_valuation,
)
from .padic_log import TruncatedPadic, log1m, to_truncated, truncation_index, verify_eq14, verify_functional_eq
from .series import (
    IntPolynomial,
    SeriesParams,
    clearing_polynomial,
    eval_polynomial,
    identity11_rhs,
    mansour_sides,
    prefix_sums,
    term_r,
    vanishing_order,
    verify_lcm_binom,
)

__version__ = "0.1.0"
