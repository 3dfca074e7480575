"""Simulation experiments: type I error, power, estimator bias, and the
fixed-threshold illustration of the raw skew-level statistic.

Every experiment is reproducible from its spec: per-n sampling seeds are
derived from (seed, n), and all three scenarios at a given n read the same
simulated samples (each replication's summary feeds every requested
scenario's statistic).
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._statvec import statistic_array
from .critical import critical_value
from .distributions import DistributionSpec, Normal, SkewNormal, validate_distribution
from .errors import InsufficientReplicationsError, InvalidArgumentError
from .estimators import _s1_mean_weight  # shared weight, keeps the transforms identical
from .kernels import sample_summaries
from .normal import xi_n
from .positions import is_exact_grid
from .rng import check_seed, derive_seed
from .sources import ApproxFormula, CriticalValueSource
from .summaries import Scenario

MIN_REPS = 1000

EXPERIMENTS = ("type1", "power", "estimator_bias", "fixed_threshold")

RATE_COLUMNS = ("experiment", "scenario", "n", "rate", "se", "reps", "seed")


@dataclass(frozen=True)
class ExperimentSpec:
    experiment: str
    reps: int = 100_000
    seed: int = 0
    alpha: float = 0.05
    source: CriticalValueSource = ApproxFormula()
    scenarios: tuple[Scenario, ...] = (Scenario.S1, Scenario.S2, Scenario.S3)
    n_grid: tuple[int, ...] = ()
    distribution: Optional[DistributionSpec] = None
    workers: int = 1
    allow_off_grid: bool = False

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InvalidArgumentError(
                f"unknown experiment {self.experiment!r} (expected one of {EXPERIMENTS})")
        if self.reps < MIN_REPS:
            raise InsufficientReplicationsError(
                f"experiments need reps >= {MIN_REPS}, got {self.reps}")
        check_seed(self.seed)
        if not (0.0 < self.alpha < 1.0):
            raise InvalidArgumentError(f"alpha must be in (0, 1), got {self.alpha!r}")
        object.__setattr__(self, "scenarios",
                           tuple(Scenario.parse(s) for s in self.scenarios))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        for n in self.n_grid:
            if n < 5:
                raise InvalidArgumentError(f"n grid values must be >= 5, got {n}")
            if not self.allow_off_grid and not is_exact_grid(n):
                raise InvalidArgumentError(
                    f"n={n} is not of the form 4Q + 1; pass allow_off_grid=True "
                    "to use the generalized summary positions")
        if self.experiment in ("type1", "power") and not self.n_grid:
            raise InvalidArgumentError(f"experiment {self.experiment!r} needs an n grid")
        if self.experiment == "power" and self.distribution is None:
            raise InvalidArgumentError("power experiments need a distribution")
        if self.distribution is not None:
            validate_distribution(self.distribution)


@dataclass(frozen=True)
class RatePoint:
    experiment: str
    scenario: Scenario
    n: int
    rate: float
    se: float
    reps: int
    seed: int


def _rate_se(rate: float, reps: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / reps)


def _rejection_rates(spec: ExperimentSpec, dist: DistributionSpec) -> list[RatePoint]:
    points = []
    for n in spec.n_grid:
        sample_seed = derive_seed(spec.seed, n)
        summaries = sample_summaries(dist, n, spec.reps, sample_seed, workers=spec.workers)
        for scenario in spec.scenarios:
            crit = critical_value(scenario, n, spec.alpha, spec.source)
            stat = statistic_array(summaries, scenario, n)
            rate = float(np.mean(stat > crit))
            points.append(RatePoint(
                experiment=spec.experiment, scenario=scenario, n=n, rate=rate,
                se=_rate_se(rate, spec.reps), reps=spec.reps, seed=spec.seed))
    return points


def run_type1(spec: ExperimentSpec) -> list[RatePoint]:
    """Rejection rates on standard-normal samples (should sit near alpha)."""
    if spec.experiment != "type1":
        raise InvalidArgumentError(f"spec is for {spec.experiment!r}, not 'type1'")
    return _rejection_rates(spec, Normal(0.0, 1.0))


def run_power(spec: ExperimentSpec) -> list[RatePoint]:
    """Rejection rates under a skewed alternative distribution."""
    if spec.experiment != "power":
        raise InvalidArgumentError(f"spec is for {spec.experiment!r}, not 'power'")
    return _rejection_rates(spec, spec.distribution)


@dataclass(frozen=True)
class EstimatorBiasResult:
    distribution: str
    n: int
    reps: int
    seed: int
    true_mean_avg: float
    true_mean_se: float
    est_mean_avg: float
    est_mean_se: float
    true_sd_avg: float
    true_sd_se: float
    est_sd_avg: float
    est_sd_se: float


def run_estimator_bias(spec: ExperimentSpec, n: int = 200) -> EstimatorBiasResult:
    """Average true vs range-transformed sample moments under ``distribution``.

    Per replication: the sample mean/SD of the full sample ("true"), and the
    mean/SD recovered from {min, median, max; n} alone ("estimated").
    """
    if spec.experiment != "estimator_bias":
        raise InvalidArgumentError(f"spec is for {spec.experiment!r}, not 'estimator_bias'")
    if spec.distribution is None:
        raise InvalidArgumentError("estimator-bias experiments need a distribution")
    if n < 5:
        raise InvalidArgumentError(f"estimator-bias experiments require n >= 5, got {n}")
    dist = spec.distribution
    data = sample_summaries(dist, n, spec.reps, derive_seed(spec.seed, n),
                            workers=spec.workers, with_moments=True)
    a, m, b = data[:, 0], data[:, 2], data[:, 4]
    true_mean, true_sd = data[:, 5], data[:, 6]
    w = _s1_mean_weight(n)
    est_mean = w * (a + b) / 2.0 + (1.0 - w) * m
    est_sd = (b - a) / xi_n(n)
    def avg_se(x):
        return float(x.mean()), float(x.std(ddof=1))
    tm, tms = avg_se(true_mean)
    em, ems = avg_se(est_mean)
    ts, tss = avg_se(true_sd)
    es, ess = avg_se(est_sd)
    return EstimatorBiasResult(
        distribution=type(dist).__name__, n=n, reps=spec.reps, seed=spec.seed,
        true_mean_avg=tm, true_mean_se=tms, est_mean_avg=em, est_mean_se=ems,
        true_sd_avg=ts, true_sd_se=tss, est_sd_avg=es, est_sd_se=ess)


@dataclass(frozen=True)
class HistogramSummary:
    mean: float
    sd: float
    minimum: float
    maximum: float
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class FixedThresholdResult:
    threshold: float
    n: int
    reps: int
    seed: int
    type1_rate: float
    type1_se: float
    power: float
    power_se: float
    alt_mean: float
    null_summary: HistogramSummary
    alt_summary: HistogramSummary


def _histogram(values: np.ndarray, bins: int = 40) -> HistogramSummary:
    counts, edges = np.histogram(values, bins=bins)
    return HistogramSummary(
        mean=float(values.mean()), sd=float(values.std(ddof=1)),
        minimum=float(values.min()), maximum=float(values.max()),
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts))


# Matched-variance null for the fixed-threshold illustration: the skewed
# alternative SkewNormal(0, 1, -10) has variance 1 - 200 / (101 pi).
_THRESHOLD_ALT = SkewNormal(0.0, 1.0, -10.0)
_THRESHOLD_NULL_VAR = 1.0 - 200.0 / (101.0 * math.pi)


def run_fixed_threshold(spec: ExperimentSpec, n: int = 100,
                   threshold: float = 0.76) -> FixedThresholdResult:
    """Reject when |a + b - 2m| exceeds a fixed threshold, in data units."""
    if spec.experiment != "fixed_threshold":
        raise InvalidArgumentError(f"spec is for {spec.experiment!r}, not 'fixed_threshold'")
    null_dist = Normal(10.0, math.sqrt(_THRESHOLD_NULL_VAR))
    null_sum = sample_summaries(null_dist, n, spec.reps,
                                derive_seed(spec.seed, 0), workers=spec.workers)
    alt_sum = sample_summaries(_THRESHOLD_ALT, n, spec.reps,
                               derive_seed(spec.seed, 1), workers=spec.workers)
    theta_null = null_sum[:, 0] + null_sum[:, 4] - 2.0 * null_sum[:, 2]
    theta_alt = alt_sum[:, 0] + alt_sum[:, 4] - 2.0 * alt_sum[:, 2]
    type1 = float(np.mean(np.abs(theta_null) > threshold))
    power = float(np.mean(np.abs(theta_alt) > threshold))
    return FixedThresholdResult(
        threshold=threshold, n=n, reps=spec.reps, seed=spec.seed,
        type1_rate=type1, type1_se=_rate_se(type1, spec.reps),
        power=power, power_se=_rate_se(power, spec.reps),
        alt_mean=float(theta_alt.mean()),
        null_summary=_histogram(theta_null),
        alt_summary=_histogram(theta_alt))


def rates_csv(points: Sequence[RatePoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(RATE_COLUMNS)
    for p in points:
        writer.writerow([p.experiment, p.scenario.value, p.n, repr(p.rate),
                         repr(p.se), p.reps, p.seed])
    return buf.getvalue()


def estimator_bias_csv(results: Sequence[EstimatorBiasResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("distribution", "n", "reps", "seed",
                     "true_mean_avg", "true_mean_se", "est_mean_avg", "est_mean_se",
                     "true_sd_avg", "true_sd_se", "est_sd_avg", "est_sd_se"))
    for r in results:
        writer.writerow([r.distribution, r.n, r.reps, r.seed,
                         repr(r.true_mean_avg), repr(r.true_mean_se),
                         repr(r.est_mean_avg), repr(r.est_mean_se),
                         repr(r.true_sd_avg), repr(r.true_sd_se),
                         repr(r.est_sd_avg), repr(r.est_sd_se)])
    return buf.getvalue()
