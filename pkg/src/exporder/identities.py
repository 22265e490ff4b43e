"""Batch verification of the combinatorial identities, with reports.

Every checker compares two independently computed sides with exact
arithmetic and returns an :class:`IdentityReport`; "exact_match" means the
sides are identical in canonical form (structural equality for rational
functions, plain equality for rationals).  :func:`run_suite` sweeps the
whole family over a parameter grid and returns reports in a deterministic
order, and reports serialize to JSON lines for machine consumption.

Identity ids name what is being compared:

    product_vs_double_sum            product form == double-sum form (all s)
    double_sum_min_order             k=1 double sum == n/(s+n)
    double_sum_max_order             k=n double sum == prod_{j<=n} j/(s+j)
    integer_rate_reciprocal_binomial alternating sum at integer rate == 1/C(n+k, k)
    nested_product_sum               single-sum-of-products form == product form
    power_sum_vs_derivative_sum      r-th-power double sum == derivative sum
    square_power_closed_form         r=2 derivative sum == product * bracket
    square_power_min_order           r=2, k=1 double sum == n(n+2s)/(s+n)^2
    inversion_involution             alternating-binomial transform is self-inverse
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .exact import Polynomial, Rational, RationalFunction, binomial
from .laplace import (
    OrderStatParams,
    double_sum_form,
    erlang_weighted_sum,
    generalized_double_sum,
    product_form,
)

__all__ = [
    "IdentityReport",
    "verify_main",
    "verify_min_order",
    "verify_max_order",
    "verify_max_order_value",
    "verify_integer_rate",
    "verify_nested",
    "verify_generalized",
    "verify_square_closed_form",
    "verify_square_min_order",
    "verify_inversion_involution",
    "binomial_invert",
    "run_suite",
    "report_to_json",
    "reports_to_json_lines",
]

Side = Union[Rational, RationalFunction, tuple]

EXACT_MATCH = "exact_match"
MISMATCH = "mismatch"

# default sweep ceilings; chosen to finish in seconds while pushing every
# intermediate well past 64-bit integer range
DEFAULT_MAX_N_STRUCTURAL = 12
DEFAULT_MAX_N_POINTWISE = 30
DEFAULT_MAX_INTEGER_RATE = 15
DEFAULT_MAX_N_NESTED = 8
DEFAULT_MAX_N_POWER = 8
DEFAULT_MAX_N_SQUARE_MIN = 12
DEFAULT_S_GRID = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(7, 2),
    Fraction(5),
)


@dataclass
class IdentityReport:
    """Outcome of one exact identity check."""

    identity_id: str
    params: dict
    lhs: Side
    rhs: Side
    verdict: str
    elapsed: float  # seconds

    @property
    def matched(self) -> bool:
        return self.verdict == EXACT_MATCH


def _report(identity_id: str, params: dict, lhs: Side, rhs: Side, t0: float) -> IdentityReport:
    verdict = EXACT_MATCH if lhs == rhs else MISMATCH
    return IdentityReport(identity_id, params, lhs, rhs, verdict, time.perf_counter() - t0)


def verify_main(n: int, k: int) -> IdentityReport:
    """Product form vs double-sum form as canonical rational functions."""
    t0 = time.perf_counter()
    p = OrderStatParams(n, k)
    return _report("product_vs_double_sum", {"n": n, "k": k}, double_sum_form(p), product_form(p), t0)


def verify_min_order(n: int) -> IdentityReport:
    """k=1 double sum vs the minimum's transform n/(s+n), structurally."""
    t0 = time.perf_counter()
    lhs = double_sum_form(OrderStatParams(n, 1))
    rhs = RationalFunction(Polynomial((n,)), Polynomial((n, 1)))
    return _report("double_sum_min_order", {"n": n, "k": 1}, lhs, rhs, t0)


def verify_max_order(n: int) -> IdentityReport:
    """k=n double sum vs the full product over j = 1..n, structurally."""
    t0 = time.perf_counter()
    lhs = double_sum_form(OrderStatParams(n, n))
    rhs = product_form(OrderStatParams(n, n))
    return _report("double_sum_max_order", {"n": n, "k": n}, lhs, rhs, t0)


def verify_max_order_value(n: int, s: Rational) -> IdentityReport:
    """k=n identity at one rational point: alternating single sum vs product value."""
    t0 = time.perf_counter()
    s = Fraction(s)
    lhs = Fraction(0)
    for j in range(n + 1):
        term = binomial(n, j) * s / (s + j)
        lhs += -term if j % 2 else term
    rhs = Fraction(1)
    for j in range(1, n + 1):
        rhs *= Fraction(j) / (s + j)
    return _report("double_sum_max_order", {"n": n, "k": n, "s": s}, lhs, rhs, t0)


def verify_integer_rate(n: int, k_s: int) -> IdentityReport:
    """Alternating sum at integer rate k_s vs the reciprocal binomial 1/C(n+k_s, k_s)."""
    t0 = time.perf_counter()
    if n < 1 or k_s < 1:
        raise ValueError(f"n and k_s must be >= 1, got n={n}, k_s={k_s}")
    lhs = Fraction(0)
    for j in range(n + 1):
        term = Fraction(binomial(n, j) * k_s, k_s + j)
        lhs += -term if j % 2 else term
    rhs = Fraction(1, binomial(n + k_s, k_s))
    return _report("integer_rate_reciprocal_binomial", {"n": n, "k_s": k_s}, lhs, rhs, t0)


def verify_nested(n: int, k: int, s: Rational) -> IdentityReport:
    """Single sum of binomial-weighted products vs the product form, at one s."""
    t0 = time.perf_counter()
    p = OrderStatParams(n, k)
    s = Fraction(s)
    if s <= 0:
        raise ValueError(f"s must be > 0, got {s}")
    lhs = Fraction(0)
    for m in range(k, n + 1):
        term = binomial(n, m) * s / (s + n - m)
        for i in range(1, m + 1):
            term *= Fraction(i) / (s + n - m + i)
        lhs += term
    rhs = product_form(p).evaluate(s)
    return _report("nested_product_sum", {"n": n, "k": k, "s": s}, lhs, rhs, t0)


def verify_generalized(n: int, k: int, r: int, s: Rational) -> IdentityReport:
    """r-th-power double sum vs the alternating derivative sum, exactly."""
    t0 = time.perf_counter()
    p = OrderStatParams(n, k)
    lhs = generalized_double_sum(p, r, s)
    rhs = erlang_weighted_sum(p, r, s)
    return _report(
        "power_sum_vs_derivative_sum", {"n": n, "k": k, "r": r, "s": Fraction(s)}, lhs, rhs, t0
    )


def verify_square_closed_form(n: int, k: int, s: Rational) -> IdentityReport:
    """r=2 derivative sum vs its closed form product * (1 + sum s/(s+j))."""
    t0 = time.perf_counter()
    p = OrderStatParams(n, k)
    s = Fraction(s)
    lhs = erlang_weighted_sum(p, 2, s)
    bracket = 1 + sum(s / (s + j) for j in range(n - k + 1, n + 1))
    rhs = product_form(p).evaluate(s) * bracket
    return _report("square_power_closed_form", {"n": n, "k": k, "r": 2, "s": s}, lhs, rhs, t0)


def verify_square_min_order(n: int, s: Rational) -> IdentityReport:
    """r=2, k=1 double sum vs the closed form n(n+2s)/(s+n)^2."""
    t0 = time.perf_counter()
    s = Fraction(s)
    lhs = generalized_double_sum(OrderStatParams(n, 1), 2, s)
    rhs = Fraction(n) * (n + 2 * s) / (s + n) ** 2
    return _report("square_power_min_order", {"n": n, "k": 1, "r": 2, "s": s}, lhs, rhs, t0)


def binomial_invert(a: Sequence[Rational]) -> tuple:
    """Alternating binomial transform b_n = sum_j (-1)^j C(n,j) a_j; self-inverse."""
    if not a:
        raise ValueError("binomial_invert needs a nonempty sequence")
    a = [Fraction(x) for x in a]
    out = []
    for n in range(len(a)):
        b = Fraction(0)
        for j in range(n + 1):
            term = binomial(n, j) * a[j]
            b += -term if j % 2 else term
        out.append(b)
    return tuple(out)


def verify_inversion_involution(a: Sequence[Rational], index: int = 0) -> IdentityReport:
    """Applying the alternating binomial transform twice returns the input."""
    t0 = time.perf_counter()
    original = tuple(Fraction(x) for x in a)
    lhs = binomial_invert(binomial_invert(original))
    return _report(
        "inversion_involution", {"length": len(original), "index": index}, lhs, original, t0
    )


def _error_report(identity_id: str, params: dict, exc: Exception, t0: float) -> IdentityReport:
    params = dict(params)
    params["error"] = f"{type(exc).__name__}: {exc}"
    zero = Fraction(0)
    return IdentityReport(identity_id, params, zero, zero, MISMATCH, time.perf_counter() - t0)


def _run_case(fn: Callable[[], IdentityReport], identity_id: str, params: dict) -> IdentityReport:
    # errors become mismatch reports so one bad cell cannot abort a sweep
    t0 = time.perf_counter()
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001 - deliberate aggregation
        return _error_report(identity_id, params, exc, t0)


def run_suite(
    max_n: int,
    max_r: int,
    s_grid: Sequence[Rational] = DEFAULT_S_GRID,
    *,
    max_n_pointwise: int = DEFAULT_MAX_N_POINTWISE,
    max_integer_rate: int = DEFAULT_MAX_INTEGER_RATE,
    max_n_nested: int = DEFAULT_MAX_N_NESTED,
    max_n_power: int = DEFAULT_MAX_N_POWER,
    max_n_square_min: int = DEFAULT_MAX_N_SQUARE_MIN,
    involution_lengths: Sequence[int] = (8, 8, 8),
    involution_seed: int = 90210,
) -> list[IdentityReport]:
    """Run every identity checker over its grid; deterministic report order.

    max_n bounds the structural sweeps, max_r the power identities, s_grid
    the pointwise ones.  The remaining ceilings default to the documented
    verification grid and can be lowered for quick runs.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    s_grid = tuple(Fraction(s) for s in s_grid)
    reports: list[IdentityReport] = []

    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            reports.append(_run_case(lambda n=n, k=k: verify_main(n, k), "product_vs_double_sum", {"n": n, "k": k}))
        reports.append(_run_case(lambda n=n: verify_min_order(n), "double_sum_min_order", {"n": n}))
        reports.append(_run_case(lambda n=n: verify_max_order(n), "double_sum_max_order", {"n": n}))

    for n in range(1, max_n_pointwise + 1):
        for s in s_grid:
            reports.append(
                _run_case(lambda n=n, s=s: verify_max_order_value(n, s), "double_sum_max_order", {"n": n, "s": s})
            )

    for n in range(1, max_integer_rate + 1):
        for k_s in range(1, max_integer_rate + 1):
            reports.append(
                _run_case(lambda n=n, k_s=k_s: verify_integer_rate(n, k_s), "integer_rate_reciprocal_binomial", {"n": n, "k_s": k_s})
            )

    for n in range(1, max_n_nested + 1):
        for k in range(1, n + 1):
            for s in s_grid:
                reports.append(
                    _run_case(lambda n=n, k=k, s=s: verify_nested(n, k, s), "nested_product_sum", {"n": n, "k": k, "s": s})
                )

    for n in range(1, max_n_power + 1):
        for k in range(1, n + 1):
            for r in range(1, max_r + 1):
                for s in s_grid:
                    reports.append(
                        _run_case(
                            lambda n=n, k=k, r=r, s=s: verify_generalized(n, k, r, s),
                            "power_sum_vs_derivative_sum",
                            {"n": n, "k": k, "r": r, "s": s},
                        )
                    )
            if max_r >= 2:
                for s in s_grid:
                    reports.append(
                        _run_case(
                            lambda n=n, k=k, s=s: verify_square_closed_form(n, k, s),
                            "square_power_closed_form",
                            {"n": n, "k": k, "s": s},
                        )
                    )

    if max_r >= 2:
        for n in range(1, max_n_square_min + 1):
            for s in s_grid:
                reports.append(
                    _run_case(lambda n=n, s=s: verify_square_min_order(n, s), "square_power_min_order", {"n": n, "s": s})
                )

    rng = random.Random(involution_seed)
    for idx, length in enumerate(involution_lengths):
        seq = tuple(
            Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(length)
        )
        reports.append(
            _run_case(
                lambda seq=seq, idx=idx: verify_inversion_involution(seq, idx),
                "inversion_involution",
                {"length": length, "index": idx},
            )
        )

    reports.sort(key=_sort_key)
    return reports


def _sort_key(report: IdentityReport):
    p = report.params
    return (
        report.identity_id,
        p.get("n", 0),
        p.get("k", p.get("k_s", 0)),
        p.get("r", 0),
        Fraction(p.get("s", 0)),
        p.get("index", 0),
    )


def _serialize_side(side: Side):
    if isinstance(side, RationalFunction):
        return {"numer": list(side.numer.coeffs), "denom": list(side.denom.coeffs)}
    if isinstance(side, tuple):
        return [str(x) for x in side]
    return str(side)


def report_to_json(report: IdentityReport, include_elapsed: bool = True) -> str:
    """One report as a JSON object (one line); fractions as exact strings."""
    payload = {
        "identity_id": report.identity_id,
        "params": {key: str(v) if isinstance(v, Fraction) else v for key, v in report.params.items()},
        "lhs": _serialize_side(report.lhs),
        "rhs": _serialize_side(report.rhs),
        "verdict": report.verdict,
    }
    if include_elapsed:
        payload["elapsed_us"] = int(report.elapsed * 1e6)
    return json.dumps(payload, sort_keys=True)


def reports_to_json_lines(reports: Sequence[IdentityReport], include_elapsed: bool = True) -> str:
    return "\n".join(report_to_json(r, include_elapsed) for r in reports) + "\n"
