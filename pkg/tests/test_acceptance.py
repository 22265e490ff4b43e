"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one line, ``ACCEPTANCE <id> <label>: PASS (<time>)`` or
``... FAIL``, and asserts both the tolerance and the runtime budget.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.

All Monte Carlo checks run at fixed seeds; a failure here is a build
failure, not a flake to retry.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

import exporder as eo
from exporder.convergence import EXACT_SUM_LIMIT, _kolmogorov_pvalue

F = Fraction

S_GRID = (F(1, 3), F(1, 2), F(1), F(2), F(7, 2), F(5))
ALPHA = 0.001


@contextmanager
def criterion(ident, label, budget_seconds):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {ident:02d} {label}: FAIL")
        raise
    elapsed = time.perf_counter() - t0
    status = "PASS" if elapsed < budget_seconds else "FAIL (over time budget)"
    print(f"ACCEPTANCE {ident:02d} {label}: {status} ({elapsed:.2f}s, budget {budget_seconds}s)")
    assert elapsed < budget_seconds


def unit_exp_cdf(t):
    return -np.expm1(-np.asarray(t, dtype=np.float64))


def test_01_identity_sweep_structural():
    """Product and double-sum transforms identical for every k <= n <= 12."""
    with criterion(1, "structural identity sweep", 10):
        for n in range(1, 13):
            for k in range(1, n + 1):
                p = eo.OrderStatParams(n, k)
                assert eo.double_sum_form(p) == eo.product_form(p), (n, k)


def test_02_special_cases():
    """Closed forms at k=1 and k=n, and the integer-rate reciprocal binomial."""
    with criterion(2, "k=1, k=n and integer-rate special cases", 10):
        for n in range(1, 13):
            assert eo.verify_min_order(n).matched
            assert eo.verify_max_order(n).matched
        for n in range(1, 31):
            for s in S_GRID:
                assert eo.verify_max_order_value(n, s).matched
        for n in range(1, 16):
            for k_s in range(1, 16):
                assert eo.verify_integer_rate(n, k_s).matched
        rep = eo.verify_integer_rate(2, 2)
        assert rep.lhs == rep.rhs == F(1, 6)


def test_03_generalized_identities():
    """Power-sum identity, its r=2 closed form, and the k=1 square form."""
    with criterion(3, "generalized identities", 30):
        for n in range(1, 9):
            for k in range(1, n + 1):
                p = eo.OrderStatParams(n, k)
                for r in range(1, 5):
                    for s in S_GRID:
                        assert eo.generalized_double_sum(p, r, s) == eo.erlang_weighted_sum(p, r, s)
                for s in S_GRID:
                    assert eo.verify_square_closed_form(n, k, s).matched
        for n in range(1, 13):
            for s in S_GRID:
                assert eo.verify_square_min_order(n, s).matched
        assert eo.verify_square_min_order(2, F(1)).lhs == F(8, 9)


def test_04_nested_identity():
    with criterion(4, "nested product-sum identity", 5):
        for n in range(1, 9):
            for k in range(1, n + 1):
                for s in S_GRID:
                    assert eo.verify_nested(n, k, s).matched


def test_05_sampler_equivalence():
    """Two-sample KS between the sort and sum constructions, all n <= 6."""
    with criterion(5, "sampler equivalence", 60):
        for n in range(1, 7):
            for k in range(1, n + 1):
                p = eo.OrderStatParams(n, k)
                direct = eo.sample_orderstat_direct(eo.SeededStream(777, 10 * n + k), p, 10**5)
                rep = eo.sample_orderstat_representation(eo.SeededStream(778, 10 * n + k), p, 10**5)
                result = eo.ks_two_sample(direct, rep, alpha=ALPHA)
                assert result.passed, (n, k, result)


def test_06_monte_carlo_moments():
    """Sample means of T_(k) within 4 sigma / sqrt(N) of the exact values."""
    with criterion(6, "Monte Carlo moments", 60):
        configs = [((3, 3), (1, 7)), ((5, 1), (1, 8)), ((4, 2), (1, 9))]
        for (n, k), (seed, sid) in configs:
            p = eo.OrderStatParams(n, k)
            batch = eo.sample_orderstat_direct(eo.SeededStream(seed, sid), p, 10**6)
            target = float(eo.orderstat_mean(p))
            band = 4.0 * math.sqrt(float(eo.orderstat_var(p))) / 1000.0
            assert abs(batch.mean() - target) < band, (n, k)


def test_07_normalized_spacings():
    """Normalized spacings are unit exponential: one-sample KS at N = 1e5."""
    with criterion(7, "normalized spacings", 30):
        for (n, k), sid in zip([(5, 3), (10, 1), (10, 10)], (101, 102, 103)):
            batch = eo.sample_normalized_spacings(eo.SeededStream(999, sid), n, k, 10**5)
            result = eo.ks_one_sample(batch, unit_exp_cdf, alpha=ALPHA)
            assert result.passed, (n, k, result)


def test_08_race_probabilities():
    with criterion(8, "race probabilities", 30):
        cases = [
            (eo.OrderStatParams(3, 2), eo.GammaParams(1, 1), F(1, 2)),
            (eo.OrderStatParams(1, 1), eo.GammaParams(1, 2), F(3, 4)),
        ]
        for p, g, expected in cases:
            assert eo.race_probability_exact(p, g) == expected
            estimate = eo.estimate_race(eo.SeededStream(42), p, g, 10**6)
            assert abs(estimate - float(expected)) < 0.002


def test_09_euler_constant():
    with criterion(9, "Euler constant limit", 5):
        rows = eo.euler_gamma_table((10, 100, 1_000, 10_000, 100_000, 1_000_000))
        assert rows[-1].abs_error < 1e-6
        assert abs(rows[-1].value - 0.5772156649) < 1e-6
        errs = [r.abs_error for r in rows]
        assert all(b < a for a, b in zip(errs, errs[1:]))


def test_10_basel_problem():
    with criterion(10, "Basel problem limit", 5):
        n_list = (10, 100, 1_000, 10_000, 100_000, 1_000_000)
        rows = eo.basel_table(n_list)
        assert rows[-1].abs_error < 1.000001e-6
        for row in rows:
            assert 1.0 / (row.n + 1) < row.abs_error < 1.0 / row.n
        variance = eo.variance_convergence_check(n_list)
        for b, v in zip(rows, variance):
            assert v.value == b.value  # identical through the variance formula


def test_11_tail_bound_audit():
    with criterion(11, "tail bound audit", 10):
        n_grid = tuple(int(round(10 ** (4 * i / 49))) for i in range(50))
        x_grid = tuple(0.01 * i for i in range(1, 1001))
        results = eo.tail_bound_audit(n_grid, x_grid)
        violations = [r for r in results if not r.passed]
        assert violations == []


def test_12_gumbel_convergence():
    with criterion(12, "Gumbel convergence", 5):
        for row in eo.gumbel_approx_error((10, 100, 1000)):
            assert row.abs_error < 0.3 / row.n


def test_13_property_suites():
    """Canonical-form closure, derivative vs finite differences, involution,
    and order-independent parallel reductions."""
    with criterion(13, "property suites", 30):
        rng = random.Random(1357911)

        def rand_poly(allow_zero=True):
            degree = rng.randint(-1 if allow_zero else 0, 4)
            if degree < 0:
                return eo.Polynomial()
            coeffs = [rng.randint(-9, 9) for _ in range(degree)]
            coeffs.append(rng.choice([1, 2, 3, -1, -2, 5]))
            return eo.Polynomial(coeffs)

        # canonical-form closure over random rational functions
        for _ in range(40):
            a = eo.RationalFunction(rand_poly(), rand_poly(allow_zero=False))
            b = eo.RationalFunction(rand_poly(), rand_poly(allow_zero=False))
            for f in (a + b, a * b, a - b, a.derivative()):
                assert f.denom.leading > 0
                if f.numer.is_zero:
                    assert f.denom == eo.Polynomial((1,))
                else:
                    assert eo.poly_gcd(f.numer, f.denom) == eo.Polynomial((1,))
                    assert math.gcd(f.numer.content(), f.denom.content()) == 1

        # derivative vs central finite differences at 20 random points
        checked = 0
        while checked < 20:
            f = eo.RationalFunction(rand_poly(allow_zero=False), rand_poly(allow_zero=False))
            s = F(rng.randint(1, 40), rng.randint(1, 8))
            h = F(1, 10**6)
            try:
                exact = float(f.derivative().evaluate(s))
                fd = float((f.evaluate(s + h) - f.evaluate(s - h)) / (2 * h))
            except ZeroDivisionError:
                continue
            if abs(exact) < 1e-12:
                continue
            assert abs(fd - exact) / abs(exact) <= 1e-6
            checked += 1

        # binomial inversion is an involution on random length-8 sequences
        for _ in range(30):
            seq = tuple(F(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(8))
            assert eo.binomial_invert(eo.binomial_invert(seq)) == seq

        # parallel-chunk invariance of Monte Carlo reductions
        p, g = eo.OrderStatParams(3, 2), eo.GammaParams(1, 1)
        base = eo.SeededStream(24680)
        sizes = [1250, 1250, 1250, 1250]
        chunked = eo.estimate_race(base, p, g, 5000, chunks=4)
        concatenated = np.concatenate(
            [eo.sample_race_indicators(base.substream(c), p, g, m).values
             for c, m in enumerate(sizes)]
        )
        assert chunked == concatenated.mean()
        summaries = [eo.race_chunk_summary(base.substream(c), p, g, m)
                     for c, m in enumerate(sizes)]
        for _ in range(4):
            rng.shuffle(summaries)
            hits = sum(h for h, _ in summaries)
            total = sum(m for _, m in summaries)
            assert hits / total == chunked
