"""
Two ways to one transform, and the identities that fall out
============================================================

The Laplace transform of the k-th smallest of n unit exponentials can be
computed from the density (giving a finite product) or from the cdf via
integration by parts (giving an alternating double sum).  Both are built
here with exact integer-polynomial arithmetic, so equality is structural,
not numerical.
"""

from fractions import Fraction

from exporder import (
    OrderStatParams,
    double_sum_form,
    erlang_weighted_sum,
    generalized_double_sum,
    product_form,
    run_suite,
)

# The two constructions for n = 4, k = 2.  Printing them shows the same
# canonical rational function, even though the double sum starts life as
# fifteen alternating terms.
p = OrderStatParams(4, 2)
f = product_form(p)
g = double_sum_form(p)
print("product form :", f)
print("double sum   :", g)
print("identical    :", f == g)
print()

# Evaluating at a rational point keeps everything exact.
s = Fraction(7, 2)
print(f"value at s = {s}:", f.evaluate(s))
print()

# The generalization: raise each double-sum term to the r-th power, and the
# result equals an alternating sum of transform derivatives.  Exact again.
for r in (1, 2, 3):
    lhs = generalized_double_sum(p, r, s)
    rhs = erlang_weighted_sum(p, r, s)
    print(f"r = {r}: double sum {lhs} == derivative sum {rhs}: {lhs == rhs}")
print()

# The batch suite sweeps every identity family over a grid and reports
# each comparison.  Zero mismatches expected.
reports = run_suite(max_n=6, max_r=3, s_grid=(Fraction(1), Fraction(7, 2)))
mismatches = [r for r in reports if not r.matched]
print(f"suite: {len(reports)} checks, {len(mismatches)} mismatches")
by_id = {}
for r in reports:
    by_id.setdefault(r.identity_id, 0)
    by_id[r.identity_id] += 1
for identity_id, count in sorted(by_id.items()):
    print(f"  {identity_id:35s} {count:4d} checks")
