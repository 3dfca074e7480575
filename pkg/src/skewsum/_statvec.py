"""Vectorized test statistics over (reps, 5) summary arrays."""

import numpy as np

from .skewtests import k_weight
from .summaries import Scenario


def t1_array(summaries: np.ndarray) -> np.ndarray:
    a, m, b = summaries[:, 0], summaries[:, 2], summaries[:, 4]
    return (a + b - 2.0 * m) / (b - a)


def t2_array(summaries: np.ndarray) -> np.ndarray:
    q1, m, q3 = summaries[:, 1], summaries[:, 2], summaries[:, 3]
    return (q1 + q3 - 2.0 * m) / (q3 - q1)


def t3_array(summaries: np.ndarray, n: int) -> np.ndarray:
    return np.maximum(k_weight(n) * np.abs(t1_array(summaries)), np.abs(t2_array(summaries)))


def statistic_array(summaries: np.ndarray, scenario: Scenario, n: int) -> np.ndarray:
    """The scenario's decision statistic: |t1|, |t2|, or t3."""
    if scenario is Scenario.S1:
        return np.abs(t1_array(summaries))
    if scenario is Scenario.S2:
        return np.abs(t2_array(summaries))
    if scenario is Scenario.S3:
        return t3_array(summaries, n)
    raise ValueError(f"no decision statistic for scenario {scenario!r}")
