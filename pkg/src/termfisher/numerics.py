"""Log-space combinatorics and distribution kernels.

All probability math here stays in natural-log space end to end; a
probability is represented by its log (a float <= 0, with -inf standing for
probability zero). Tail values far below double-precision underflow (around
exp(-745)) are therefore exact to float precision, which the extreme
upper-tail weights in this package require.

Everything is a pure function; the only state is a read-only table of
log-factorial prefix sums built at import time.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, exp, inf, lgamma, log, log1p
from typing import NamedTuple, TYPE_CHECKING

from .errors import (
    BoundInapplicableError,
    InvalidChooseError,
    InvalidProbabilityError,
    OracleDomainExceededError,
)

if TYPE_CHECKING:
    from .corpus import CellStats

NEG_INFINITY = -inf

# Exact prefix sums of log(k) for small arguments; lgamma above. The seam is
# checked in tests to agree within 1e-12 relative.
_TABLE_SIZE = 10_000
_LOG_FACTORIAL = [0.0] * (_TABLE_SIZE + 1)
for _k in range(2, _TABLE_SIZE + 1):
    _LOG_FACTORIAL[_k] = _LOG_FACTORIAL[_k - 1] + log(_k)

ORACLE_MAX_POPULATION = 200


class HypergeomParams(NamedTuple):
    """Arguments of the hypergeometric distribution.

    k: observed successes, K: population successes, s: sample size,
    N: population size.
    """

    k: int
    K: int
    s: int
    N: int


def _validate_population(params: HypergeomParams) -> None:
    k, K, s, N = params
    if N < 0 or not 0 <= K <= N or not 0 <= s <= N:
        raise ValueError(f"invalid hypergeometric population: {params}")
    if k < 0:
        raise ValueError(f"negative success count: {params}")


def log_factorial(x: int) -> float:
    """ln(x!) for x >= 0, accurate to at least 12 significant digits."""
    if x < 0:
        raise ValueError(f"factorial undefined for {x}")
    if x <= _TABLE_SIZE:
        return _LOG_FACTORIAL[x]
    return lgamma(x + 1.0)


def log_choose(a: int, b: int) -> float:
    """ln C(a, b) for 0 <= b <= a; exactly symmetric in b <-> a - b."""
    if b < 0 or b > a:
        raise InvalidChooseError(f"C({a}, {b}) is undefined")
    b = min(b, a - b)
    return log_factorial(a) - log_factorial(b) - log_factorial(a - b)


def _support(K: int, s: int, N: int) -> tuple[int, int]:
    return max(0, s - (N - K)), min(K, s)


def log_hypergeom_pmf(params: HypergeomParams) -> float:
    """ln P(X = k) for X hypergeometric(K, s, N); -inf outside the support."""
    _validate_population(params)
    k, K, s, N = params
    lo, hi = _support(K, s, N)
    if k < lo or k > hi:
        return NEG_INFINITY
    return log_choose(K, k) + log_choose(N - K, s - k) - log_choose(N, s)


def log_binom_pmf(k: int, s: int, p: float) -> float:
    """ln P(X = k) for X binomial(s, p).

    p in {0, 1} degenerates to a point mass at 0 or s; k outside [0, s]
    has probability zero.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"probability {p} outside [0, 1]")
    if s < 0:
        raise ValueError(f"negative sample size {s}")
    if k < 0 or k > s:
        return NEG_INFINITY
    if p == 0.0:
        return 0.0 if k == 0 else NEG_INFINITY
    if p == 1.0:
        return 0.0 if k == s else NEG_INFINITY
    return log_choose(s, k) + k * log(p) + (s - k) * log1p(-p)


def log_hypergeom_tail(params: HypergeomParams) -> float:
    """ln P(X >= k) for X hypergeometric(K, s, N).

    Exactly 0.0 when k is at or below the lower support edge (the tail is the
    whole distribution) and -inf when k is past the upper edge (empty tail).
    In between, the log terms are summed smallest-first, anchored at the
    maximum log term, so relative error stays bounded even for tails far
    below underflow.
    """
    _validate_population(params)
    k, K, s, N = params
    lo, hi = _support(K, s, N)
    if k <= lo:
        return 0.0
    if k > hi:
        return NEG_INFINITY
    lf = _LOG_FACTORIAL
    if N <= _TABLE_SIZE:
        lf_k = lf[K]
        lf_r = lf[N - K]
        terms = [
            lf_k - lf[t] - lf[K - t] + lf_r - lf[s - t] - lf[N - K - s + t]
            for t in range(k, hi + 1)
        ]
    else:
        terms = [
            log_choose(K, t) + log_choose(N - K, s - t) for t in range(k, hi + 1)
        ]
    anchor = max(terms)
    total = 0.0
    for t in reversed(terms):  # smallest terms first: t runs hi -> k
        total += exp(t - anchor)
    return anchor - log_choose(N, s) + log(total)


def hypergeom_tail_oracle(params: HypergeomParams) -> Fraction:
    """Exact rational P(X >= k) by integer enumeration; test oracle only.

    Restricted to N <= ORACLE_MAX_POPULATION to keep enumeration tractable.
    """
    _validate_population(params)
    k, K, s, N = params
    if N > ORACLE_MAX_POPULATION:
        raise OracleDomainExceededError(
            f"population {N} exceeds oracle limit {ORACLE_MAX_POPULATION}"
        )
    lo, hi = _support(K, s, N)
    if k <= lo:
        return Fraction(1)
    if k > hi:
        return Fraction(0)
    numerator = sum(comb(K, t) * comb(N - K, s - t) for t in range(k, hi + 1))
    return Fraction(numerator, comb(N, s))


def chvatal_log_bound(stats: "CellStats") -> float:
    """Exponential upper bound on ln P(X >= n_ij + 1) for the cell's tail.

    Evaluates n_j * [pc*ln(p_i/pc) + (1-pc)*ln((1-p_i)/(1-pc))] with
    pc = p_ij + 1/n_j. Applicability (p_i <= pc < 1) is checked on the
    integer fields so borderline cells are classified exactly.
    """
    # p_i <= p_check  <=>  n_i * n_j <= (n_ij + 1) * n;  p_check < 1  <=>  n_ij + 1 < n_j
    if stats.n_i * stats.n_j > (stats.n_ij + 1) * stats.n:
        raise BoundInapplicableError("requires p_i <= p_check")
    if stats.n_ij + 1 >= stats.n_j:
        raise BoundInapplicableError("requires p_check < 1")
    if stats.n_i * stats.n_j == (stats.n_ij + 1) * stats.n:
        return 0.0  # p_check == p_i exactly: both logs are ln 1
    p_i = stats.p_i
    pc = stats.p_check
    return stats.n_j * (pc * log(p_i / pc) + (1.0 - pc) * log((1.0 - p_i) / (1.0 - pc)))


def log_sum_exp(a: float, b: float) -> float:
    """ln(exp(a) + exp(b)) without leaving log space."""
    if a == NEG_INFINITY:
        return b
    if b == NEG_INFINITY:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + log1p(exp(lo - hi))
