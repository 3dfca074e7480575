"""Sampling distributions for the null and the four skewed alternatives.

The draw-order contract shared by both sampling backends, per block of
replications (row-major; one row per replication):

* ``Normal``, ``HalfNormal``, ``LogNormal``: one block of ``reps * n``
  standard normals.
* ``SkewNormal``: one block of ``reps * 2n`` standard normals; within a row
  the first ``n`` feed the folded component, the last ``n`` the symmetric one
  (Z = delta*|U| + sqrt(1 - delta^2)*V).
* ``MixtureNormal``: ``reps * n`` uniforms (component choice, u < p picks the
  first component), then ``reps * n`` standard normals.

Keeping this order fixed is what makes the compiled and NumPy backends
produce identical streams from the same seed.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidArgumentError

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class Normal:
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        _require(self.sigma > 0.0, f"Normal requires sigma > 0, got {self.sigma}")
        _require_finite(self.mu, self.sigma)

    def analytic_mean(self) -> float:
        return self.mu

    def analytic_sd(self) -> float:
        return self.sigma


@dataclass(frozen=True)
class SkewNormal:
    loc: float = 0.0
    omega: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        _require(self.omega > 0.0, f"SkewNormal requires omega > 0, got {self.omega}")
        _require_finite(self.loc, self.omega, self.alpha)

    @property
    def delta(self) -> float:
        return self.alpha / math.sqrt(1.0 + self.alpha * self.alpha)

    def analytic_mean(self) -> float:
        return self.loc + self.omega * self.delta * _SQRT_2_OVER_PI

    def analytic_sd(self) -> float:
        return self.omega * math.sqrt(1.0 - 2.0 * self.delta ** 2 / math.pi)


@dataclass(frozen=True)
class HalfNormal:
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        _require(self.sigma > 0.0, f"HalfNormal requires sigma > 0, got {self.sigma}")
        _require_finite(self.mu, self.sigma)

    def analytic_mean(self) -> float:
        return self.mu + self.sigma * _SQRT_2_OVER_PI

    def analytic_sd(self) -> float:
        return self.sigma * math.sqrt(1.0 - 2.0 / math.pi)


@dataclass(frozen=True)
class LogNormal:
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        _require(self.sigma > 0.0, f"LogNormal requires sigma > 0, got {self.sigma}")
        _require_finite(self.mu, self.sigma)

    def analytic_mean(self) -> float:
        return math.exp(self.mu + 0.5 * self.sigma ** 2)

    def analytic_sd(self) -> float:
        s2 = self.sigma ** 2
        return math.sqrt((math.exp(s2) - 1.0) * math.exp(2.0 * self.mu + s2))


@dataclass(frozen=True)
class MixtureNormal:
    p: float = 0.5
    mu1: float = 0.0
    sigma1: float = 1.0
    mu2: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        _require(0.0 < self.p < 1.0, f"MixtureNormal requires p in (0, 1), got {self.p}")
        _require(self.sigma1 > 0.0 and self.sigma2 > 0.0,
                   "MixtureNormal requires positive component scales")
        _require_finite(self.p, self.mu1, self.sigma1, self.mu2, self.sigma2)

    def analytic_mean(self) -> float:
        return self.p * self.mu1 + (1.0 - self.p) * self.mu2

    def analytic_sd(self) -> float:
        m = self.analytic_mean()
        second = (self.p * (self.sigma1 ** 2 + self.mu1 ** 2)
                  + (1.0 - self.p) * (self.sigma2 ** 2 + self.mu2 ** 2))
        return math.sqrt(second - m * m)


DistributionSpec = Union[Normal, SkewNormal, HalfNormal, LogNormal, MixtureNormal]

_KINDS = (Normal, SkewNormal, HalfNormal, LogNormal, MixtureNormal)


def validate_distribution(dist: DistributionSpec) -> DistributionSpec:
    if not isinstance(dist, _KINDS):
        raise InvalidArgumentError(f"unknown distribution spec: {dist!r}")
    return dist


def normal_draws_per_value(dist: DistributionSpec) -> int:
    """How many standard normals one sampled value consumes."""
    return 2 if isinstance(dist, SkewNormal) else 1


def uses_uniforms(dist: DistributionSpec) -> bool:
    return isinstance(dist, MixtureNormal)


def transform_block(dist: DistributionSpec, z: np.ndarray, u: np.ndarray | None) -> np.ndarray:
    """Map standard-normal draws ``z`` (and uniforms ``u`` for mixtures) to samples.

    ``z`` has shape (reps, k*n) with k = ``normal_draws_per_value``; the result
    has shape (reps, n).
    """
    if isinstance(dist, Normal):
        return dist.mu + dist.sigma * z
    if isinstance(dist, HalfNormal):
        return dist.mu + dist.sigma * np.abs(z)
    if isinstance(dist, LogNormal):
        return np.exp(dist.mu + dist.sigma * z)
    if isinstance(dist, SkewNormal):
        n = z.shape[1] // 2
        d = dist.delta
        e = math.sqrt(1.0 - d * d)
        return dist.loc + dist.omega * (d * np.abs(z[:, :n]) + e * z[:, n:])
    if isinstance(dist, MixtureNormal):
        return np.where(u < dist.p, dist.mu1 + dist.sigma1 * z, dist.mu2 + dist.sigma2 * z)
    raise InvalidArgumentError(f"unknown distribution spec: {dist!r}")


def sample(dist: DistributionSpec, n: int, seed: int) -> np.ndarray:
    """n i.i.d. draws from ``dist``, deterministic in ``seed``."""
    validate_distribution(dist)
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"sample requires n >= 1, got {n!r}")
    from .rng import make_generator  # local import to avoid a cycle

    rng = make_generator(seed)
    k = normal_draws_per_value(dist)
    u = rng.random((1, n)) if uses_uniforms(dist) else None
    z = rng.standard_normal((1, k * n))
    return transform_block(dist, z, u)[0]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidArgumentError(message)


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidArgumentError(f"distribution parameters must be finite, got {v!r}")
