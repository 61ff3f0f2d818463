"""Exact-arithmetic reference values for tests.

Everything here is built from integers and Fractions only: tail sums are
big-integer binomial sums, probabilities are exact rationals, and logs are
taken of (big) integers, which math.log handles at full precision. These
references share no code with the package's log-space engine.
"""

from fractions import Fraction
from math import comb, log


def support(K: int, s: int, N: int) -> tuple[int, int]:
    return max(0, s - (N - K)), min(K, s)


def tail_fraction(k: int, K: int, s: int, N: int) -> Fraction:
    """Exact P(X >= k) for X hypergeometric(K, s, N)."""
    lo, hi = support(K, s, N)
    if k <= lo:
        return Fraction(1)
    if k > hi:
        return Fraction(0)
    numerator = sum(comb(K, t) * comb(N - K, s - t) for t in range(k, hi + 1))
    return Fraction(numerator, comb(N, s))


def pmf_fraction(k: int, K: int, s: int, N: int) -> Fraction:
    lo, hi = support(K, s, N)
    if k < lo or k > hi:
        return Fraction(0)
    return Fraction(comb(K, k) * comb(N - K, s - k), comb(N, s))


def binom_pmf_fraction(k: int, s: int, p: Fraction) -> Fraction:
    if k < 0 or k > s:
        return Fraction(0)
    return comb(s, k) * p**k * (1 - p) ** (s - k)


def log_fraction(value: Fraction) -> float:
    """ln of a positive rational, via big-integer logs."""
    if value <= 0:
        raise ValueError("log of nonpositive rational")
    return log(value.numerator) - log(value.denominator)


def neg_log_tail(k: int, K: int, s: int, N: int) -> float:
    """Exact-arithmetic -ln P(X >= k); 0.0 for a full-support tail."""
    tail = tail_fraction(k, K, s, N)
    if tail == 1:
        return 0.0
    return -log_fraction(tail)


def quotient(n_ij: int, n_i: int, n_j: int, n: int) -> float:
    """Exact-arithmetic tail/binomial quotient for a cell."""
    tail = tail_fraction(n_ij + 1, n_i, n_j, n)
    if tail == 0:
        return 0.0
    ratio = tail / binom_pmf_fraction(n_ij, n_j, Fraction(n_i, n))
    return float(ratio)
