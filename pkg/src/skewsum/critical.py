"""Critical values from four sources: tables, formulas, asymptotics, simulation.

The rejection regions are two-sided for S1/S2 (reject when |t| exceeds the
critical value) and one-sided for S3. Because the S1/S2 null distributions
are symmetric, the critical value at level alpha is the upper alpha/2
quantile of the signed statistic, equivalently the upper alpha quantile of
its absolute value; the Monte Carlo path computes the latter.
"""

import math

import numpy as np

from ._statvec import statistic_array
from .distributions import Normal
from .errors import (
    AsymptoticUnavailableError,
    InsufficientReplicationsError,
    InvalidArgumentError,
    OutOfTableRangeError,
    UnsupportedAlphaError,
)
from .kernels import sample_summaries
from .normal import logistic_quantile, std_normal_quantile, xi_n
from .sources import ApproxFormula, Asymptotic, CriticalValueSource, ExactTable, MonteCarlo
from .summaries import Scenario
from .tables import TABLE_N_MAX, TABLE_N_MIN, load_tables

FIXED_LEVEL = 0.05
MIN_MC_REPS = 1000


def table_critical(scenario: Scenario, n: int) -> float:
    """0.05-level critical value from the embedded table, interpolated in n."""
    scenario = _check_test_scenario(scenario)
    n = _check_n(n)
    if not (TABLE_N_MIN <= n <= TABLE_N_MAX):
        raise OutOfTableRangeError(
            f"n={n} outside the tabulated range [{TABLE_N_MIN}, {TABLE_N_MAX}]; "
            "use the approximate formula instead")
    rows = load_tables()[scenario].rows
    q, rem = divmod(n - 1, 4)
    if rem == 0:
        return rows[q - 1][2]
    lo_n, lo_v = rows[q - 1][1], rows[q - 1][2]
    hi_n, hi_v = rows[q][1], rows[q][2]
    frac = (n - lo_n) / (hi_n - lo_n)
    return lo_v + frac * (hi_v - lo_v)


def approx_critical(scenario: Scenario, n: int) -> float:
    """0.05-level critical value from the closed-form approximations."""
    scenario = _check_test_scenario(scenario)
    n = _check_n(n)
    if scenario is Scenario.S1:
        return 1.01 / math.log(n + 9.0) + 2.43 / (n + 1.0)
    if scenario is Scenario.S2:
        return 2.66 / math.sqrt(n) - 5.92 / n ** 2
    return 2.97 / math.sqrt(n) - 39.1 / n ** 3


def asymptotic_critical(scenario: Scenario, n: int, alpha: float) -> float:
    """Large-sample critical value; unavailable for S3."""
    scenario = _check_test_scenario(scenario)
    if scenario is Scenario.S3:
        raise AsymptoticUnavailableError("no asymptotic null distribution under S3")
    n = _check_n(n)
    _check_alpha(alpha)
    if scenario is Scenario.S1:
        return logistic_quantile(1.0 - alpha / 2.0) / (math.sqrt(2.0 * math.log(n)) * xi_n(n))
    return std_normal_quantile(1.0 - alpha / 2.0) / (0.74 * math.sqrt(n))


def mc_critical(
    scenario: Scenario,
    n: int,
    alpha: float = FIXED_LEVEL,
    reps: int = 1_000_000,
    seed: int = 0,
    *,
    workers: int = 1,
    block_size: int | None = None,
) -> float:
    """Simulated critical value from ``reps`` standard-normal samples of size n.

    Deterministic in ``seed``; invariant to ``workers`` and block layout.
    """
    scenario = _check_test_scenario(scenario)
    n = _check_n(n)
    _check_alpha(alpha)
    if reps < MIN_MC_REPS:
        raise InsufficientReplicationsError(
            f"Monte Carlo criticals need reps >= {MIN_MC_REPS}, got {reps}")
    kwargs = {} if block_size is None else {"block_size": block_size}
    summaries = sample_summaries(Normal(0.0, 1.0), n, reps, seed, workers=workers, **kwargs)
    stat = statistic_array(summaries, scenario, n)
    return float(np.quantile(stat, 1.0 - alpha))


def critical_value(scenario: Scenario, n: int, alpha: float, source: CriticalValueSource) -> float:
    """Dispatch to the requested source, enforcing each source's domain."""
    scenario = Scenario.parse(scenario)
    if isinstance(source, (ExactTable, ApproxFormula)):
        if not math.isclose(alpha, FIXED_LEVEL, rel_tol=0.0, abs_tol=1e-12):
            raise UnsupportedAlphaError(
                f"{type(source).__name__} serves only alpha = {FIXED_LEVEL}; "
                f"got alpha = {alpha} (use the Monte Carlo source)")
        if isinstance(source, ExactTable):
            return table_critical(scenario, n)
        return approx_critical(scenario, n)
    if isinstance(source, Asymptotic):
        return asymptotic_critical(scenario, n, alpha)
    if isinstance(source, MonteCarlo):
        return mc_critical(scenario, n, alpha, source.reps, source.seed)
    raise InvalidArgumentError(f"unknown critical-value source: {source!r}")


def _check_test_scenario(scenario) -> Scenario:
    scenario = Scenario.parse(scenario)
    if not scenario.testable:
        raise InvalidArgumentError(
            f"critical values exist only for s1/s2/s3, got {scenario.value}")
    return scenario


def _check_n(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 5:
        raise InvalidArgumentError(f"critical values require integer n >= 5, got {n!r}")
    return int(n)


def _check_alpha(alpha) -> None:
    if not (0.0 < alpha < 1.0):
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha!r}")
