"""Recover a sample mean and SD from a (partial) five-number summary.

Mean estimators weight the mid-range / mid-quartile range against the median
with sample-size dependent weights; SD estimators divide the range by xi(n)
and the IQR by eta(n), blending both for the full summary. The weight
constants below are the published optimal choices for the cited estimators;
the test suite validates them by Monte Carlo unbiasedness under normality.
"""

from dataclasses import dataclass

from .errors import DegenerateRangeError, NotApplicableError
from .normal import eta_n, xi_n
from .summaries import Scenario, SummaryRecord


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    sd: float
    mean_method: str
    sd_method: str


def _s1_mean_weight(n: int) -> float:
    return 4.0 / (4.0 + n ** 0.75)


def estimate_mean(summary: SummaryRecord) -> float:
    """Estimated sample mean for a tested scenario (s1/s2/s3)."""
    scenario = summary.scenario
    n = summary.n
    if scenario is Scenario.S1:
        w = _s1_mean_weight(n)
        return w * (summary.a + summary.b) / 2.0 + (1.0 - w) * summary.m
    if scenario is Scenario.S2:
        w = 0.7 + 0.39 / n
        return w * (summary.q1 + summary.q3) / 2.0 + (1.0 - w) * summary.m
    if scenario is Scenario.S3:
        w1 = 2.2 / (2.2 + n ** 0.75)
        w2 = 0.7 - 0.72 / n ** 0.55
        return (w1 * (summary.a + summary.b) / 2.0
                + w2 * (summary.q1 + summary.q3) / 2.0
                + (1.0 - w1 - w2) * summary.m)
    raise NotApplicableError(
        f"scenario {scenario.value} already reports its mean; nothing to estimate")


def estimate_sd(summary: SummaryRecord) -> float:
    """Estimated sample SD; also covers mean_range rows (range-only SD)."""
    scenario = summary.scenario
    n = summary.n
    if scenario in (Scenario.S1, Scenario.MEAN_RANGE):
        if summary.b == summary.a:
            raise DegenerateRangeError("sd estimate undefined: b - a is zero")
        return (summary.b - summary.a) / xi_n(n)
    if scenario is Scenario.S2:
        if summary.q3 == summary.q1:
            raise DegenerateRangeError("sd estimate undefined: q3 - q1 is zero")
        return (summary.q3 - summary.q1) / eta_n(n)
    if scenario is Scenario.S3:
        if summary.b == summary.a or summary.q3 == summary.q1:
            raise DegenerateRangeError("sd estimate undefined: zero range or IQR")
        w = 1.0 / (1.0 + 0.07 * n ** 0.6)
        return (w * (summary.b - summary.a) / xi_n(n)
                + (1.0 - w) * (summary.q3 - summary.q1) / eta_n(n))
    raise NotApplicableError("scenario mean_sd already reports its SD")


_MEAN_METHOD = {
    Scenario.S1: "midrange-median blend",
    Scenario.S2: "midquartile-median blend",
    Scenario.S3: "midrange-midquartile-median blend",
}
_SD_METHOD = {
    Scenario.S1: "range / xi(n)",
    Scenario.MEAN_RANGE: "range / xi(n)",
    Scenario.S2: "iqr / eta(n)",
    Scenario.S3: "blended range and iqr",
}


def estimate_moments(summary: SummaryRecord) -> MomentEstimate:
    """Mean and SD for one arm, estimating whatever the scenario left out."""
    scenario = summary.scenario
    if scenario is Scenario.MEAN_SD:
        return MomentEstimate(summary.mean, summary.sd, "reported", "reported")
    if scenario is Scenario.MEAN_RANGE:
        return MomentEstimate(summary.mean, estimate_sd(summary), "reported",
                              _SD_METHOD[scenario])
    return MomentEstimate(estimate_mean(summary), estimate_sd(summary),
                          _MEAN_METHOD[scenario], _SD_METHOD[scenario])
