"""NumPy implementation of the five-number sampling kernel.

Must stay draw-for-draw compatible with the compiled kernel in
``_mckernel.pyx``: both consume the generator stream in the order documented
in ``distributions`` and extract exact order statistics, so the two backends
return identical summaries for the same block generator.
"""

import numpy as np

from .distributions import (
    DistributionSpec,
    normal_draws_per_value,
    transform_block,
    uses_uniforms,
)
from .positions import summary_positions
from .rng import chunk_reps

BACKEND = "numpy"


def summary_block(
    bit_generator: np.random.BitGenerator,
    dist: DistributionSpec,
    n: int,
    reps: int,
    with_moments: bool = False,
) -> np.ndarray:
    """(reps, 5) five-number summaries, or (reps, 7) with mean and SD appended."""
    rng = np.random.Generator(bit_generator)
    q1i, mlo, mhi, q3i = summary_positions(n)
    kth = sorted({0, q1i, mlo, mhi, q3i, n - 1})
    k = normal_draws_per_value(dist)
    out = np.empty((reps, 7 if with_moments else 5))
    chunk = chunk_reps(n, k)
    done = 0
    while done < reps:
        m = min(chunk, reps - done)
        u = rng.random((m, n)) if uses_uniforms(dist) else None
        z = rng.standard_normal((m, k * n))
        x = transform_block(dist, z, u)
        block = out[done:done + m]
        if with_moments:
            block[:, 5] = x.mean(axis=1)
            block[:, 6] = x.std(axis=1, ddof=1)
        x.partition(kth, axis=1)
        block[:, 0] = x[:, 0]
        block[:, 1] = x[:, q1i]
        block[:, 2] = 0.5 * (x[:, mlo] + x[:, mhi])
        block[:, 3] = x[:, q3i]
        block[:, 4] = x[:, n - 1]
        done += m
    return out
