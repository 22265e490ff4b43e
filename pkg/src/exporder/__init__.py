"""Exact identities and seeded simulations for exponential order statistics.

The package verifies a family of combinatorial identities that fall out of
computing the Laplace transform of the k-th exponential order statistic in
two ways, validates the distributional facts behind them with reproducible
Monte Carlo, and reproduces the Euler-constant and Basel-problem limits
numerically.
"""

from .exact import Polynomial, Rational, RationalFunction, binomial, poly_gcd
from .laplace import (
    OrderStatParams,
    double_sum_form,
    erlang_weighted_sum,
    generalized_double_sum,
    laplace_derivative,
    product_form,
)
from .identities import (
    IdentityReport,
    binomial_invert,
    report_to_json,
    reports_to_json_lines,
    run_suite,
    verify_generalized,
    verify_integer_rate,
    verify_inversion_involution,
    verify_main,
    verify_max_order,
    verify_max_order_value,
    verify_min_order,
    verify_nested,
    verify_square_closed_form,
    verify_square_min_order,
)
from .distributions import (
    GammaParams,
    erlang_survival,
    gumbel_cdf,
    orderstat_cdf,
    orderstat_mean,
    orderstat_pdf,
    orderstat_var,
    race_probability_exact,
    zn_cdf,
)
from .sampling import (
    SampleBatch,
    SeededStream,
    dump_batch,
    estimate_race,
    load_batch,
    race_chunk_summary,
    sample_exponential,
    sample_normalized_spacings,
    sample_orderstat_direct,
    sample_orderstat_representation,
    sample_race_indicators,
    sample_zn,
)
from .convergence import (
    ConvergenceRow,
    EULER_GAMMA,
    PI_SQUARED_OVER_6,
    TestResult,
    basel_table,
    euler_gamma_table,
    gumbel_approx_error,
    ks_one_sample,
    ks_two_sample,
    tail_bound_audit,
    variance_convergence_check,
)

__version__ = "0.1.0"
