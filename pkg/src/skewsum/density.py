"""Exact null densities of the t1 and t2 statistics on the n = 4Q + 1 grid.

Each density is a double integral of the joint order-statistic density over
the half-plane where the two conditioning order statistics are ordered. The
integrand includes the Jacobian gap factor (v - u) / 2 of the change of
variables to the statistic; dropping it leaves a non-normalized function.
All factorial ratios are assembled in log space so large n cannot overflow.

Integration runs over a truncated square |u|, |v| <= 9: the mass outside is
bounded by the probability that any of the n standard normals leaves
[-9, 9], below 1e-16 for every tabulated n.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import ndtr

from .errors import InvalidArgumentError
from .positions import grid_q
from .quadrature import integrate_2d

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_DOMAIN_BOUND = 9.0
_REL_TOL = 1e-7
# Densities of interest are O(0.1)..O(5); the absolute floor only matters in
# the far tail where the value itself is negligible.
_ABS_TOL = 1e-12
# |t| = 1 exactly makes the inner order statistic coincide with an endpoint
# and the integrand collapse to rounding noise; grid endpoints back off by
# this much and rely on continuity.
_ENDPOINT_BACKOFF = 1e-9

StatisticKind = Literal["t1", "t2"]


@dataclass(frozen=True)
class NullDensityQuery:
    statistic_kind: StatisticKind
    n: int
    t: float

    def __post_init__(self):
        if self.statistic_kind not in ("t1", "t2"):
            raise InvalidArgumentError(
                f"statistic_kind must be 't1' or 't2', got {self.statistic_kind!r}")
        grid_q(self.n)  # raises unless n = 4Q + 1, Q >= 1
        if not (math.isfinite(self.t) and abs(self.t) < 1.0):
            raise InvalidArgumentError(f"t must satisfy |t| < 1, got {self.t!r}")


def _integrand(kind: StatisticKind, n: int, t: float):
    q = grid_q(n)
    if kind == "t1":
        log_comb = math.lgamma(n + 1) - 2.0 * math.lgamma(2 * q)
        expo = 2 * q - 1

        def f(u, v):
            w = 0.5 * (u + v) - 0.5 * t * (v - u)
            d1 = ndtr(w) - ndtr(u)
            d2 = ndtr(v) - ndtr(w)
            good = (v > u) & (d1 > 0.0) & (d2 > 0.0)
            gap = np.where(v > u, 0.5 * (v - u), 1.0)
            lg = (log_comb + np.log(gap)
                  - 0.5 * (u * u + v * v + w * w) - 3.0 * _LOG_SQRT_2PI
                  + expo * (np.log(np.where(good, d1, 1.0))
                            + np.log(np.where(good, d2, 1.0))))
            return np.where(good, np.exp(lg), 0.0)

        return f

    log_comb = math.lgamma(n + 1) - 2.0 * (math.lgamma(q + 1) + math.lgamma(q))

    def f(u, v):
        w = 0.5 * (u + v) - 0.5 * t * (v - u)
        pu = ndtr(u)
        pv = ndtr(v)
        pw = ndtr(w)
        d1 = pw - pu
        d2 = pv - pw
        good = (v > u) & (pu > 0.0) & (pv < 1.0)
        if q > 1:
            good = good & (d1 > 0.0) & (d2 > 0.0)
        else:
            good = good & (d1 >= 0.0) & (d2 >= 0.0)
        gap = np.where(v > u, 0.5 * (v - u), 1.0)
        lg = (log_comb + np.log(gap)
              - 0.5 * (u * u + v * v + w * w) - 3.0 * _LOG_SQRT_2PI
              + q * (np.log(np.where(pu > 0.0, pu, 1.0))
                     + np.log(np.where(pv < 1.0, 1.0 - pv, 1.0))))
        if q > 1:
            lg = lg + (q - 1) * (np.log(np.where(good, d1, 1.0))
                                 + np.log(np.where(good, d2, 1.0)))
        return np.where(good, np.exp(lg), 0.0)

    return f


def _initial_rectangles(bound: float) -> np.ndarray:
    edges = np.array([-bound, -2.0, -1.0, 0.0, 1.0, 2.0, bound])
    rects = []
    for i in range(len(edges) - 1):
        for j in range(len(edges) - 1):
            if edges[j + 1] > edges[i]:  # rectangle meets the region v > u
                rects.append((edges[i], edges[i + 1], edges[j], edges[j + 1]))
    return np.array(rects)


def _density_at(kind: StatisticKind, n: int, t: float) -> float:
    if abs(t) >= 1.0:
        t = math.copysign(1.0 - _ENDPOINT_BACKOFF, t)
    f = _integrand(kind, n, t)
    return integrate_2d(f, _initial_rectangles(_DOMAIN_BOUND),
                        rel_tol=_REL_TOL, abs_tol=_ABS_TOL, max_rects=16384)


def null_density(query: NullDensityQuery) -> float:
    """Exact null density of the statistic at ``query.t``."""
    return _density_at(query.statistic_kind, query.n, query.t)


@dataclass(frozen=True)
class DensityProfile:
    """Density values on a fixed grid of [0, 1] plus their spline integral.

    The density is symmetric about zero, so the profile covers only t >= 0;
    the total mass is twice the one-sided integral.
    """

    kind: StatisticKind
    n: int
    grid: tuple[float, ...]
    values: tuple[float, ...]

    def spline(self) -> CubicSpline:
        return CubicSpline(np.array(self.grid), np.array(self.values))

    def total_mass(self) -> float:
        anti = self.spline().antiderivative()
        return 2.0 * float(anti(1.0) - anti(0.0))

    def upper_tail(self, c: float) -> float:
        anti = self.spline().antiderivative()
        return float(anti(1.0) - anti(c))


_PROFILE_POINTS = 161


@lru_cache(maxsize=32)
def density_profile(kind: StatisticKind, n: int) -> DensityProfile:
    # The t = 1 grid value is the continuity value from just inside the
    # boundary; it is positive only for Q = 1 under t2.
    grid = np.linspace(0.0, 1.0, _PROFILE_POINTS)
    values = [_density_at(kind, n, float(t)) for t in grid]
    return DensityProfile(kind=kind, n=n, grid=tuple(grid), values=tuple(values))


def null_cdf_upper(kind: StatisticKind, n: int, c: float) -> float:
    """P(statistic > c) under the null, for c in [0, 1]."""
    if not (0.0 <= c <= 1.0):
        raise InvalidArgumentError(f"upper-tail point must lie in [0, 1], got {c!r}")
    grid_q(n)
    return density_profile(kind, n).upper_tail(c)


def null_quantile(kind: StatisticKind, n: int, upper_tail: float) -> float:
    """c with P(statistic > c) = upper_tail; root of the profiled CDF."""
    grid_q(n)
    if not (0.0 < upper_tail < 0.5):
        raise InvalidArgumentError(
            f"upper_tail must be in (0, 0.5), got {upper_tail!r}")
    profile = density_profile(kind, n)
    anti = profile.spline().antiderivative()
    top = float(anti(1.0))

    def gap(c: float) -> float:
        return (top - float(anti(c))) - upper_tail

    return float(brentq(gap, 0.0, 1.0, xtol=1e-8))
