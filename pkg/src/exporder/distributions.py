"""Closed-form distributions for exponential order statistics and gamma races.

Densities and cdfs are double precision; means and variances are exact
rationals (they feed the identity machinery).  Also here: the Erlang
survival function, the exact probability that an Erlang variable outlasts
an order statistic, and the extreme-value pieces (the shifted-maximum cdf
and its Gumbel limit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .exact import Rational, binomial, sum_fractions
from .laplace import OrderStatParams, erlang_weighted_sum

__all__ = [
    "GammaParams",
    "orderstat_pdf",
    "orderstat_cdf",
    "orderstat_mean",
    "orderstat_var",
    "erlang_survival",
    "race_probability_exact",
    "gumbel_cdf",
    "zn_cdf",
]


@dataclass(frozen=True)
class GammaParams:
    """Gamma distribution with rate s > 0 and integer shape r >= 1."""

    s: Real
    r: int

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(f"rate must be > 0, got {self.s}")
        if not (isinstance(self.r, int) and self.r >= 1):
            raise ValueError(f"shape must be an integer >= 1, got {self.r}")


def _check_nonnegative(t: float, name: str = "t") -> float:
    t = float(t)
    if not t >= 0:
        raise ValueError(f"{name} must be >= 0, got {t}")
    return t


def orderstat_pdf(p: OrderStatParams, t: float) -> float:
    """Density of the k-th smallest of n unit exponentials at t >= 0.

    The beta-function normalizer 1/B(k, n-k+1) = k*C(n, k) is exact before
    conversion to float; (1 - e^-t)^(k-1) uses expm1 so small t does not
    cancel catastrophically.
    """
    t = _check_nonnegative(t)
    norm = p.k * binomial(p.n, p.k)
    w = -math.expm1(-t)
    return norm * w ** (p.k - 1) * math.exp(-(p.n - p.k + 1) * t)


def orderstat_cdf(p: OrderStatParams, t: float) -> float:
    """cdf of the k-th smallest of n unit exponentials at t >= 0.

    The binomial-weighted terms are combined with fsum, so the only
    rounding left is the per-term evaluation (the w^m power costs ~m ulps);
    the result is monotone to within a few ulps even on the plateau near 1.
    """
    t = _check_nonnegative(t)
    w = -math.expm1(-t)
    return math.fsum(
        binomial(p.n, m) * w**m * math.exp(-(p.n - m) * t) for m in range(p.k, p.n + 1)
    )


def orderstat_mean(p: OrderStatParams) -> Rational:
    """Exact mean: sum of 1/(n-k+j) for j = 1..k (spacing representation)."""
    return sum_fractions(Fraction(1, p.n - p.k + j) for j in range(1, p.k + 1))


def orderstat_var(p: OrderStatParams) -> Rational:
    """Exact variance: sum of 1/(n-k+j)^2 for j = 1..k."""
    return sum_fractions(Fraction(1, (p.n - p.k + j) ** 2) for j in range(1, p.k + 1))


def erlang_survival(g: GammaParams, x: float) -> float:
    """P(X > x) for X ~ Gamma(rate=s, integer shape=r): the Erlang tail sum."""
    x = _check_nonnegative(x, "x")
    sx = float(g.s) * x
    term = math.exp(-sx)
    total = term
    for j in range(1, g.r):
        term *= sx / j
        total += term
    return min(total, 1.0)


def race_probability_exact(p: OrderStatParams, g: GammaParams) -> Rational:
    """Exact P(gamma variable > k-th order statistic); needs a rational rate."""
    if not isinstance(g.s, (int, Fraction)):
        raise TypeError(f"exact race probability needs a rational rate, got {type(g.s).__name__}")
    return erlang_weighted_sum(p, g.r, Fraction(g.s))


def gumbel_cdf(x: float) -> float:
    """Standard Gumbel cdf exp(-e^-x)."""
    return math.exp(-math.exp(-float(x)))


def zn_cdf(n: int, x: float) -> float:
    """cdf of (max of n unit exponentials) - ln n: (1 - e^-x / n)^n on its support.

    Zero for x < -ln n (the formula's base would go negative there); the
    power is taken as exp(n*log1p(.)) for accuracy at large n.
    """
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"sample size must be an integer >= 1, got {n}")
    return float(_zn_cdf_array(n, np.asarray(float(x))))


def _zn_cdf_array(n: int, x: np.ndarray) -> np.ndarray:
    """Vectorized zn_cdf over a float array (shared by the audit grids)."""
    ratio = np.exp(-x) / n
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(ratio < 1.0, np.exp(n * np.log1p(-np.minimum(ratio, 1.0))), 0.0)
    return vals
