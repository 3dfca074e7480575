"""Order-statistic positions backing the five-number summary.

For n = 4Q + 1 the quartile ranks are exactly Q+1, 2Q+1, 3Q+1 (1-based) and
the median is a single order statistic. Other n use the generalized
convention: median averages the middle pair when n is even, and the quartile
ranks are floor((n + 3) / 4) and n + 1 - floor((n + 3) / 4), which reduce to
the exact ranks on the 4Q + 1 grid.
"""

from .errors import InvalidArgumentError


def summary_positions(n: int) -> tuple[int, int, int, int]:
    """0-based indices (q1, median_lo, median_hi, q3); min/max are 0 and n-1."""
    if not isinstance(n, int) or n < 5:
        raise InvalidArgumentError(f"five-number positions require integer n >= 5, got {n!r}")
    if n % 2 == 1:
        mlo = mhi = (n - 1) // 2
    else:
        mlo, mhi = n // 2 - 1, n // 2
    q1 = (n + 3) // 4 - 1
    q3 = n - (n + 3) // 4
    return q1, mlo, mhi, q3


def is_exact_grid(n: int) -> bool:
    """True when n = 4Q + 1 for a positive integer Q."""
    return isinstance(n, int) and n >= 5 and (n - 1) % 4 == 0


def grid_q(n: int) -> int:
    if not is_exact_grid(n):
        raise InvalidArgumentError(f"n must be of the form 4Q + 1 with Q >= 1, got {n!r}")
    return (n - 1) // 4
