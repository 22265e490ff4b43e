"""
One law, two samplers
=====================

The k-th smallest of n unit exponentials has the same distribution as a
sum of k independent exponentials with rates n-k+1, ..., n.  This script
draws from both constructions with fixed seeds and lets a two-sample
Kolmogorov-Smirnov test judge whether the laws agree; it then checks the
normalized spacings, which should be unit exponential.
"""

import numpy as np

from exporder import (
    OrderStatParams,
    SeededStream,
    ks_one_sample,
    ks_two_sample,
    orderstat_mean,
    orderstat_var,
    sample_normalized_spacings,
    sample_orderstat_direct,
    sample_orderstat_representation,
)

REPLICATES = 100_000

print(f"{'(n, k)':8s} {'direct mean':>12s} {'exact mean':>11s} {'KS D':>8s} {'p-value':>8s}")
for n, k in [(3, 2), (5, 1), (5, 5), (6, 3)]:
    p = OrderStatParams(n, k)
    direct = sample_orderstat_direct(SeededStream(101, 10 * n + k), p, REPLICATES)
    summed = sample_orderstat_representation(SeededStream(102, 10 * n + k), p, REPLICATES)
    result = ks_two_sample(direct, summed)
    print(
        f"({n}, {k})   {direct.mean():12.5f} {float(orderstat_mean(p)):11.5f}"
        f" {result.statistic:8.5f} {result.threshold_or_pvalue:8.4f}  {result.verdict}"
    )

print()
print("sample variance of the full maximum vs the exact inverse-square sum:")
p = OrderStatParams(6, 6)
batch = sample_orderstat_direct(SeededStream(103, 1), p, REPLICATES)
print(f"  simulated {batch.variance():.5f}   exact {float(orderstat_var(p)):.5f}")

print()
print("normalized spacings against the unit-exponential cdf:")
for n, k in [(5, 3), (10, 1), (10, 10)]:
    batch = sample_normalized_spacings(SeededStream(104, 10 * n + k), n, k, REPLICATES)
    result = ks_one_sample(batch, lambda t: -np.expm1(-np.asarray(t, dtype=np.float64)))
    print(f"  (n={n:2d}, k={k:2d})  D={result.statistic:.5f}  p={result.threshold_or_pvalue:.4f}  {result.verdict}")
