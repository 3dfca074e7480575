"""Reported study-arm summaries and their validation."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import InvalidArgumentError, InvalidSummaryError


class Scenario(str, Enum):
    S1 = "s1"            # {a, m, b; n}
    S2 = "s2"            # {q1, m, q3; n}
    S3 = "s3"            # {a, q1, m, q3, b; n}
    MEAN_SD = "mean_sd"
    MEAN_RANGE = "mean_range"

    @classmethod
    def parse(cls, value) -> "Scenario":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidArgumentError(
                f"unknown scenario {value!r} (expected one of {[s.value for s in cls]})"
            ) from None

    @property
    def testable(self) -> bool:
        return self in (Scenario.S1, Scenario.S2, Scenario.S3)


_REQUIRED = {
    Scenario.S1: ("a", "m", "b"),
    Scenario.S2: ("q1", "m", "q3"),
    Scenario.S3: ("a", "q1", "m", "q3", "b"),
    Scenario.MEAN_SD: ("mean", "sd"),
    Scenario.MEAN_RANGE: ("mean", "a", "b"),
}

_ORDER_CHAIN = ("a", "q1", "m", "q3", "b")


@dataclass(frozen=True)
class SummaryRecord:
    """One arm's reported numbers: a scenario tag, the values it implies, and n."""

    scenario: Scenario
    n: int
    a: Optional[float] = None
    q1: Optional[float] = None
    m: Optional[float] = None
    q3: Optional[float] = None
    b: Optional[float] = None
    mean: Optional[float] = None
    sd: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise InvalidSummaryError(f"n must be a positive integer, got {self.n!r}")
        for field in _REQUIRED[self.scenario]:
            value = getattr(self, field)
            if value is None:
                raise InvalidSummaryError(
                    f"scenario {self.scenario.value} requires field {field!r}")
            if not math.isfinite(float(value)):
                raise InvalidSummaryError(f"field {field!r} must be finite, got {value!r}")
        present = [(f, getattr(self, f)) for f in _ORDER_CHAIN if getattr(self, f) is not None]
        for (f_lo, lo), (f_hi, hi) in zip(present, present[1:]):
            if lo > hi:
                raise InvalidSummaryError(
                    f"ordering violated: {f_lo}={lo} > {f_hi}={hi}")
        if self.scenario is Scenario.MEAN_SD and not (self.sd is not None and self.sd > 0):
            raise InvalidSummaryError(f"mean_sd requires sd > 0, got {self.sd!r}")

    def theta1(self) -> Optional[float]:
        """Skew-level estimate a + b - 2m in data units, when available."""
        if self.a is not None and self.b is not None and self.m is not None:
            return self.a + self.b - 2.0 * self.m
        return None

    def theta2(self) -> Optional[float]:
        """Skew-level estimate q1 + q3 - 2m in data units, when available."""
        if self.q1 is not None and self.q3 is not None and self.m is not None:
            return self.q1 + self.q3 - 2.0 * self.m
        return None
