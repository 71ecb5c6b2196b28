"""Binomial mass statistics: exact rational values, log-domain evaluation,
the distribution maximum, and power sums with their large-n approximations.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from .errors import BudgetExceededError

#: Default cap on n*m term-power operations for exact power sums.
POWER_SUM_BUDGET = 200_000


def _check_exact_q(q) -> Fraction:
    if isinstance(q, int) or not isinstance(q, Fraction):
        raise ValueError("exact computations require q as a Fraction")
    if not 0 < q < 1:
        raise ValueError(f"q={q} must lie strictly between 0 and 1")
    return q


def _check_float_q(q) -> float:
    qf = float(q)
    if not 0.0 < qf < 1.0:
        raise ValueError(f"q={q} must lie strictly between 0 and 1")
    return qf


def binom_pdf_exact(k: int, n: int, q: Fraction) -> Fraction:
    """Exact binomial mass q^k (1-q)^(n-k) C(n,k)."""
    _check_exact_q(q)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    return math.comb(n, k) * q**k * (1 - q) ** (n - k)


def binom_pdf_log(k: int, n: int, q: float) -> float:
    """Natural log of the binomial mass, via log-gamma."""
    qf = _check_float_q(q)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
            + k * math.log(qf) + (n - k) * math.log1p(-qf))


@dataclasses.dataclass(frozen=True)
class BinomialMax:
    """Location and exact value of max_k of the binomial mass.

    ``tied`` is True exactly when (n+1)q is an integer in [1, n]; the two
    equal maxima then sit at argmax_k and argmax_k + 1, and the lower
    index is reported.
    """

    argmax_k: int
    value: Fraction
    tied: bool


def binom_max(n: int, q: Fraction) -> BinomialMax:
    """Maximum of the binomial mass, attained at floor((n+1)q)."""
    _check_exact_q(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = (n + 1) * q
    if t.denominator == 1 and 1 <= t <= n:
        k, tied = int(t) - 1, True
    else:
        k, tied = min(n, math.floor(t)), False
    return BinomialMax(argmax_k=k, value=binom_pdf_exact(k, n, q), tied=tied)


def demoivre_approx(k: int, n: int, q: float) -> float:
    """Gaussian approximation of the binomial mass at k (de Moivre-Laplace)."""
    qf = _check_float_q(q)
    if n < 1:
        raise ValueError("n must be positive")
    var = n * qf * (1 - qf)
    return math.exp(-((k - n * qf) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)


def power_sum_exact(n: int, m: int, q: Fraction,
                    budget: int = POWER_SUM_BUDGET) -> Fraction:
    """Exact sum over k of the m-th power of the binomial mass.

    Accumulates integer numerators over the common denominator
    denom(q)^(n*m), so no gcd work happens until the final reduction.
    """
    _check_exact_q(q)
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n * m > budget:
        raise BudgetExceededError(
            f"power sum needs {n * m} term-power operations (budget {budget})",
            required=n * m, budget=budget)
    a, b = q.numerator, q.denominator
    c = b - a
    num = 0
    binom = 1       # C(n, k)
    ak = 1          # a^k
    cnk = c ** n    # (b-a)^(n-k)
    for k in range(n + 1):
        num += (binom * ak * cnk) ** m
        if k < n:
            binom = binom * (n - k) // (k + 1)
            ak *= a
            cnk //= c
    return Fraction(num, b ** (n * m))


def power_sum_asymptotic(n: int, m: int, q: float) -> float:
    """Large-n approximation (2*pi*q*(1-q)*n)^(-(m-1)/2) / sqrt(m)."""
    qf = _check_float_q(q)
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 1:
        raise ValueError("n must be positive")
    return math.exp(-(m - 1) / 2 * math.log(2 * math.pi * qf * (1 - qf) * n)
                    - 0.5 * math.log(m))
