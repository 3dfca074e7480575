"""Seeding and stream-splitting helpers.

The generator is pinned to PCG64 (period 2^128, splittable through
``SeedSequence``) so every Monte Carlo output in this package is reproducible
within a build from its integer seed. Replications are partitioned into
fixed-size blocks; block ``i`` always draws from the ``i``-th spawned child
stream, which makes results independent of how blocks are scheduled across
workers.
"""

import numpy as np

from .errors import InvalidArgumentError

MAX_SEED = 2 ** 64 - 1
DEFAULT_BLOCK_SIZE = 65536


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise InvalidArgumentError(f"seed must be an integer, got {seed!r}")
    if not (0 <= int(seed) <= MAX_SEED):
        raise InvalidArgumentError(f"seed must fit in 64 unsigned bits, got {seed}")
    return int(seed)


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def block_bit_generators(seed: int, n_blocks: int) -> list[np.random.PCG64]:
    """One independent PCG64 per block, identical for any worker schedule."""
    root = np.random.SeedSequence(check_seed(seed))
    return [np.random.PCG64(child) for child in root.spawn(n_blocks)]


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit sub-seed determined by (seed, keys); stable across runs."""
    entropy = [check_seed(seed), *[int(k) for k in keys]]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def block_sizes(total: int, block_size: int = DEFAULT_BLOCK_SIZE) -> list[int]:
    if total < 1:
        raise InvalidArgumentError(f"replication count must be >= 1, got {total}")
    if block_size < 1:
        raise InvalidArgumentError(f"block size must be >= 1, got {block_size}")
    full, rest = divmod(total, block_size)
    return [block_size] * full + ([rest] if rest else [])


# Both sampling backends regenerate in sub-chunks of this many raw draws.
# The chunk boundary is part of the draw-order contract: distributions that
# interleave uniform and normal draws consume one chunk of uniforms, then
# that chunk's normals.
CHUNK_VALUES = 1 << 20


def chunk_reps(n: int, draws_per_value: int) -> int:
    return max(1, CHUNK_VALUES // (draws_per_value * n))
