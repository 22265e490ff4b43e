"""Command-line front end: identity sweeps, simulations, tables, races.

Commands
--------
verify    run the exact identity suite over a parameter grid
simulate  sampler-equivalence and spacing KS checks at fixed seeds
converge  Euler-constant / Basel / variance / Gumbel tables and tail audit
race      exact vs Monte Carlo probability that a gamma draw wins
all       verify, simulate, converge with the default verification grids

Exit codes: 0 all checks passed, 1 any mismatch or failed test, 2 usage
error.  Rationals cross the boundary as exact fraction strings ("7/2");
json and csv output is byte-identical for identical configurations
(timings are therefore only shown in pretty mode).  EXPORDER_SEED
(decimal) overrides the default seed when --seed is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import convergence, identities, sampling
from .distributions import GammaParams, race_probability_exact
from .laplace import OrderStatParams

__all__ = ["RunConfig", "parse_args", "run", "main"]

DEFAULT_SEED = 20170807
SEED_ENV_VAR = "EXPORDER_SEED"

DEFAULT_N_LIST = (10, 100, 1_000, 10_000, 100_000, 1_000_000)
DEFAULT_TARGETS = ("gamma", "basel", "variance", "gumbel", "tail")
_TABLE_TARGETS = ("gamma", "basel", "variance", "gumbel")

# audit defaults: 50 log-spaced sizes in [1, 10^4], x = 0.01 .. 10 step 0.01
TAIL_N_GRID = tuple(
    int(round(10 ** (4 * i / 49))) for i in range(50)
)
TAIL_X_GRID = tuple(0.01 * i for i in range(1, 1001))

GUMBEL_ERROR_BUDGET = 0.3  # sup distance must stay below this over n


@dataclass
class RunConfig:
    """Validated CLI invocation."""

    command: str
    max_n: int = 12
    max_r: int = 4
    s_grid: tuple = identities.DEFAULT_S_GRID
    seed: int = DEFAULT_SEED
    replicates: int = 100_000
    output_format: str = "pretty"
    output_path: Optional[str] = None
    targets: tuple = DEFAULT_TARGETS
    n_list: tuple = DEFAULT_N_LIST
    race_n: int = 3
    race_k: int = 2
    race_r: int = 1
    race_s: Fraction = Fraction(1)
    chunks: int = 1


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r} ({exc})")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"s must be > 0, got {text!r}")
    return value


def _fraction_list(text: str) -> tuple:
    return tuple(_positive_fraction(part) for part in text.split(","))


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _unsigned_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {value}")
    return value


def _int_list(text: str) -> tuple:
    return tuple(_positive_int(part) for part in text.split(","))


def _targets(text: str) -> tuple:
    targets = tuple(part.strip() for part in text.split(","))
    bad = [t for t in targets if t not in DEFAULT_TARGETS]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown targets {bad}; choose from {', '.join(DEFAULT_TARGETS)}"
        )
    return targets


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exporder",
        description="Exact identities and seeded simulations for exponential order statistics.",
        epilog=f"The default seed is {DEFAULT_SEED}; set {SEED_ENV_VAR} to override it.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        p.add_argument("--format", choices=formats, default="pretty", dest="output_format")
        p.add_argument("--output", dest="output_path", default=None, metavar="PATH")
        p.add_argument("--seed", type=_unsigned_int, default=None)

    p_verify = sub.add_parser("verify", help="run the exact identity sweep")
    p_verify.add_argument("--max-n", type=_positive_int, default=12)
    p_verify.add_argument("--max-r", type=_positive_int, default=4)
    p_verify.add_argument("--s", type=_fraction_list, default=identities.DEFAULT_S_GRID, dest="s_grid")
    add_common(p_verify, ("json", "pretty"))

    p_sim = sub.add_parser("simulate", help="fixed-seed sampler checks")
    p_sim.add_argument("--max-n", type=_positive_int, default=6)
    p_sim.add_argument("--replicates", type=_positive_int, default=100_000)
    add_common(p_sim, ("json", "pretty"))

    p_conv = sub.add_parser("converge", help="limit tables and the tail audit")
    p_conv.add_argument("--targets", type=_targets, default=DEFAULT_TARGETS)
    p_conv.add_argument("--n", type=_int_list, default=DEFAULT_N_LIST, dest="n_list")
    add_common(p_conv, ("json", "csv", "pretty"))

    p_race = sub.add_parser("race", help="gamma vs order statistic, exact and simulated")
    p_race.add_argument("--n", type=_positive_int, default=3, dest="race_n")
    p_race.add_argument("--k", type=_positive_int, default=2, dest="race_k")
    p_race.add_argument("--r", type=_positive_int, default=1, dest="race_r")
    p_race.add_argument("--s", type=_positive_fraction, default=Fraction(1), dest="race_s")
    p_race.add_argument("--replicates", type=_positive_int, default=1_000_000)
    p_race.add_argument("--chunks", type=_positive_int, default=1)
    add_common(p_race, ("json", "pretty"))

    p_all = sub.add_parser("all", help="verify, simulate, converge with default grids")
    p_all.add_argument("--replicates", type=_positive_int, default=100_000)
    add_common(p_all, ("json", "pretty"))

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse argv into a RunConfig; argparse exits with code 2 on usage errors."""
    ns = build_parser().parse_args(argv)
    if ns.seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        ns.seed = int(env) if env else DEFAULT_SEED
    fields = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {k: v for k, v in vars(ns).items() if k in fields and v is not None}
    return RunConfig(**kwargs)


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_verify(config: RunConfig) -> tuple[int, str]:
    reports = identities.run_suite(config.max_n, config.max_r, config.s_grid)
    mismatches = [r for r in reports if not r.matched]
    if config.output_format == "json":
        text = identities.reports_to_json_lines(reports, include_elapsed=False)
    else:
        lines = [f"identity sweep: {len(reports)} checks, {len(mismatches)} mismatches"]
        for r in mismatches:
            lines.append(f"  MISMATCH {r.identity_id} {r.params}")
        text = "\n".join(lines) + "\n"
    return (0 if not mismatches else 1), text


def _simulate_results(config: RunConfig) -> list[convergence.TestResult]:
    results = []
    sid = 0
    for n in range(1, config.max_n + 1):
        for k in range(1, n + 1):
            p = OrderStatParams(n, k)
            direct = sampling.sample_orderstat_direct(
                sampling.SeededStream(config.seed, sid), p, config.replicates
            )
            rep = sampling.sample_orderstat_representation(
                sampling.SeededStream(config.seed, sid + 1), p, config.replicates
            )
            results.append(
                convergence.ks_two_sample(direct, rep, test_id=f"sampler_equivalence[n={n},k={k}]")
            )
            spacing = sampling.sample_normalized_spacings(
                sampling.SeededStream(config.seed, sid + 2), n, k, config.replicates
            )
            results.append(
                convergence.ks_one_sample(
                    spacing,
                    _unit_exponential_cdf,
                    test_id=f"spacing_unit_exponential[n={n},k={k}]",
                )
            )
            sid += 3
    return results


def _unit_exponential_cdf(t):
    return -np.expm1(-np.asarray(t, dtype=np.float64))


def _run_simulate(config: RunConfig) -> tuple[int, str]:
    results = _simulate_results(config)
    failures = [t for t in results if not t.passed]
    if config.output_format == "json":
        text = convergence.results_to_json_lines(results)
    else:
        lines = [f"simulation checks: {len(results)} tests, {len(failures)} failures"]
        for t in results:
            lines.append(f"  {t.verdict.upper():4s} {t.test_id} D={t.statistic:.5f} p={t.threshold_or_pvalue:.5f}")
        text = "\n".join(lines) + "\n"
    return (0 if not failures else 1), text


def _converge_rows(target: str, n_list: Sequence[int]) -> list[convergence.ConvergenceRow]:
    if target == "gamma":
        return convergence.euler_gamma_table(n_list)
    if target == "basel":
        return convergence.basel_table(n_list)
    if target == "variance":
        return convergence.variance_convergence_check(n_list)
    if target == "gumbel":
        return convergence.gumbel_approx_error(n_list)
    raise ValueError(f"unknown table target {target!r}")


def _audit_rows(target: str, rows: Sequence[convergence.ConvergenceRow]) -> list[str]:
    """Built-in per-row sanity checks mirrored from the verification suite."""
    problems = []
    if target in ("gamma", "gumbel"):
        for a, b in zip(rows, rows[1:]):
            if b.n > a.n and not b.abs_error < a.abs_error:
                problems.append(f"{target}: error not decreasing between n={a.n} and n={b.n}")
    if target == "gamma":
        for r in rows:
            if not 1.0 / (2 * r.n + 2) < r.abs_error < 1.0 / (2 * r.n):
                problems.append(f"gamma: error outside (1/(2n+2), 1/(2n)) at n={r.n}")
    if target == "basel":
        for r in rows:
            if not 1.0 / (r.n + 1) < r.abs_error < 1.0 / r.n:
                problems.append(f"basel: error outside (1/(n+1), 1/n) at n={r.n}")
    if target == "gumbel":
        for r in rows:
            if r.n >= 10 and not r.abs_error < GUMBEL_ERROR_BUDGET / r.n:
                problems.append(f"gumbel: sup distance {r.abs_error} >= {GUMBEL_ERROR_BUDGET}/n at n={r.n}")
    return problems


def _run_converge(config: RunConfig) -> tuple[int, str]:
    table_targets = [t for t in config.targets if t in _TABLE_TARGETS]
    want_tail = "tail" in config.targets
    if config.output_format == "csv" and want_tail:
        sys.stderr.write("exporder: the tail audit has no CSV form; use --format json\n")
        return 2, ""

    problems: list[str] = []
    chunks: list[str] = []
    for target in table_targets:
        rows = _converge_rows(target, config.n_list)
        problems.extend(_audit_rows(target, rows))
        if config.output_format == "csv":
            header = "" if len(table_targets) == 1 else f"table,{target}\n"
            chunks.append(header + convergence.rows_to_csv(rows))
        elif config.output_format == "json":
            chunks.append(f'{{"table": "{target}", "rows": {convergence.rows_to_json(rows)}}}\n')
        else:
            body = "\n".join(
                f"  n={r.n:>9d} value={r.value:.12f} abs_error={r.abs_error:.3e}" for r in rows
            )
            chunks.append(f"{target}:\n{body}\n")

    if want_tail:
        results = convergence.tail_bound_audit(TAIL_N_GRID, TAIL_X_GRID)
        tail_failures = [t for t in results if not t.passed]
        problems.extend(f"tail: {t.test_id} failed" for t in tail_failures)
        if config.output_format == "json":
            chunks.append(convergence.results_to_json_lines(results))
        else:
            chunks.append(
                f"tail audit: {len(results)} checks over {len(TAIL_N_GRID)} sizes x "
                f"{len(TAIL_X_GRID)} points, {len(tail_failures)} failures\n"
            )

    text = "".join(chunks)
    if problems and config.output_format == "pretty":
        text += "".join(f"PROBLEM {p}\n" for p in problems)
    return (0 if not problems else 1), text


def _run_race(config: RunConfig) -> tuple[int, str]:
    p = OrderStatParams(config.race_n, config.race_k)
    g = GammaParams(config.race_s, config.race_r)
    exact = race_probability_exact(p, g)
    stream = sampling.SeededStream(config.seed)
    estimate = sampling.estimate_race(stream, p, g, config.replicates, config.chunks)
    sigma = (float(exact) * (1.0 - float(exact))) ** 0.5
    band = 4.0 * sigma / config.replicates**0.5
    error = abs(estimate - float(exact))
    ok = error <= band
    if config.output_format == "json":
        text = (
            json.dumps(
                {
                    "n": config.race_n,
                    "k": config.race_k,
                    "r": config.race_r,
                    "s": str(config.race_s),
                    "replicates": config.replicates,
                    "seed": config.seed,
                    "exact": str(exact),
                    "estimate": estimate,
                    "abs_error": error,
                    "band_4sigma": band,
                    "verdict": "pass" if ok else "fail",
                },
                sort_keys=True,
            )
            + "\n"
        )
    else:
        text = (
            f"exact      = {exact} ({float(exact):.6f})\n"
            f"estimate   = {estimate:.6f}  ({config.replicates} replicates, seed {config.seed})\n"
            f"abs error  = {error:.6f}\n"
            f"4-sigma    = {band:.6f}\n"
            f"verdict    = {'pass' if ok else 'fail'}\n"
        )
    return (0 if ok else 1), text


def run(config: RunConfig) -> int:
    """Execute one configured command; returns the process exit code."""
    if config.command == "verify":
        code, text = _run_verify(config)
    elif config.command == "simulate":
        code, text = _run_simulate(config)
    elif config.command == "converge":
        code, text = _run_converge(config)
    elif config.command == "race":
        code, text = _run_race(config)
    elif config.command == "all":
        pieces = []
        code = 0
        for cmd in ("verify", "simulate", "converge"):
            sub = RunConfig(
                command=cmd,
                seed=config.seed,
                replicates=config.replicates,
                output_format=config.output_format,
                max_n=12 if cmd == "verify" else 6,
            )
            sub_code, text = (
                _run_verify(sub) if cmd == "verify"
                else _run_simulate(sub) if cmd == "simulate"
                else _run_converge(sub)
            )
            code = max(code, sub_code)
            pieces.append(text)
        text = "".join(pieces)
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {config.command!r}")
    _emit(config, text)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
