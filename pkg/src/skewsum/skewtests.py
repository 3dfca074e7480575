"""Skewness test statistics for five-number summaries and test verdicts.

The statistics are scale-free contrasts of the reported order statistics:
``t1`` compares the median against the mid-range, ``t2`` against the
mid-quartile range, and ``t3`` combines both on a common scale via the
sample-size weight ``k_weight``. Under normality each has expectation zero.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DegenerateRangeError,
    InvalidArgumentError,
    InvalidSummaryError,
    TestNotApplicableError,
)
from .sources import ApproxFormula, CriticalValueSource
from .summaries import Scenario, SummaryRecord


def t1_statistic(a: float, m: float, b: float) -> float:
    """(a + b - 2m) / (b - a); lies in [-1, 1] for ordered input."""
    if not (a <= m <= b):
        raise InvalidSummaryError(f"ordering violated: need a <= m <= b, got {(a, m, b)}")
    if b == a:
        raise DegenerateRangeError("t1 undefined: b - a is zero")
    return (a + b - 2.0 * m) / (b - a)


def t2_statistic(q1: float, m: float, q3: float) -> float:
    """(q1 + q3 - 2m) / (q3 - q1); lies in [-1, 1] for ordered input."""
    if not (q1 <= m <= q3):
        raise InvalidSummaryError(f"ordering violated: need q1 <= m <= q3, got {(q1, m, q3)}")
    if q3 == q1:
        raise DegenerateRangeError("t2 undefined: q3 - q1 is zero")
    return (q1 + q3 - 2.0 * m) / (q3 - q1)


def k_weight(n: int) -> float:
    """Weight 2.65 * ln(0.6 n) / sqrt(n) putting |t1| on the |t2| scale."""
    if not isinstance(n, int) or n < 5:
        raise InvalidArgumentError(f"k_weight requires integer n >= 5, got {n!r}")
    return 2.65 * math.log(0.6 * n) / math.sqrt(n)


def t3_statistic(a: float, q1: float, m: float, q3: float, b: float, n: int) -> float:
    """max(k_weight(n) * |t1|, |t2|) over the full five-number summary."""
    if not (a <= q1 <= m <= q3 <= b):
        raise InvalidSummaryError(
            f"ordering violated: need a <= q1 <= m <= q3 <= b, got {(a, q1, m, q3, b)}")
    return max(k_weight(n) * abs(t1_statistic(a, m, b)), abs(t2_statistic(q1, m, q3)))


@dataclass(frozen=True)
class SkewTestResult:
    scenario: Scenario
    statistic: float
    critical_value: float
    source: CriticalValueSource
    alpha: float
    reject: bool
    theta1_hat: Optional[float] = None   # a + b - 2m, data units
    theta2_hat: Optional[float] = None   # q1 + q3 - 2m, data units

    @property
    def verdict(self) -> str:
        return "Reject" if self.reject else "Not reject"


def run_test(
    summary: SummaryRecord,
    alpha: float = 0.05,
    source: CriticalValueSource = ApproxFormula(),
) -> SkewTestResult:
    """Compute the scenario's statistic and compare it with the critical value.

    Rejection means the summary is significantly skewed: |statistic| exceeds
    the critical value under S1/S2, the (nonnegative) statistic exceeds it
    under S3.
    """
    from .critical import critical_value  # deferred to keep module import light

    scenario = summary.scenario
    if not scenario.testable:
        raise TestNotApplicableError(
            f"scenario {scenario.value} reports no testable five-number summary")
    if summary.n < 5:
        raise InvalidArgumentError(f"skewness tests require n >= 5, got n={summary.n}")
    if not (0.0 < alpha < 1.0):
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha!r}")

    if scenario is Scenario.S1:
        stat = t1_statistic(summary.a, summary.m, summary.b)
    elif scenario is Scenario.S2:
        stat = t2_statistic(summary.q1, summary.m, summary.q3)
    else:
        stat = t3_statistic(summary.a, summary.q1, summary.m, summary.q3, summary.b, summary.n)

    crit = critical_value(scenario, summary.n, alpha, source)
    reject = stat > crit if scenario is Scenario.S3 else abs(stat) > crit
    return SkewTestResult(
        scenario=scenario,
        statistic=stat,
        critical_value=crit,
        source=source,
        alpha=alpha,
        reject=reject,
        theta1_hat=summary.theta1(),
        theta2_hat=summary.theta2(),
    )
