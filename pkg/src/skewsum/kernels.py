"""Backend selection and block scheduling for the sampling kernels.

The compiled kernel is preferred when its extension module imported cleanly;
``SKEWSUM_BACKEND=py`` or ``=c`` forces a choice (the benchmark uses this).
Replications are split into fixed-size blocks, each driven by its own spawned
PCG64 stream, so results are bit-identical for any worker count and for both
backends.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py
from .distributions import DistributionSpec, validate_distribution
from .errors import InvalidArgumentError
from .rng import DEFAULT_BLOCK_SIZE, block_bit_generators, block_sizes, check_seed

try:
    from . import _mckernel
except ImportError:  # pragma: no cover - build-environment dependent
    _mckernel = None

_FORCED = os.environ.get("SKEWSUM_BACKEND", "").strip().lower()
if _FORCED == "py":
    _impl = _kernels_py
elif _FORCED == "c":
    if _mckernel is None:
        raise ImportError("SKEWSUM_BACKEND=c but the compiled kernel is not built")
    _impl = _mckernel
elif _FORCED:
    raise ImportError(f"unknown SKEWSUM_BACKEND value: {_FORCED!r}")
else:
    _impl = _mckernel if _mckernel is not None else _kernels_py


def backend_name() -> str:
    return _impl.BACKEND


def available_backends() -> dict[str, object]:
    table = {"numpy": _kernels_py}
    if _mckernel is not None:
        table["c"] = _mckernel
    return table


def summary_block(bit_generator, dist, n, reps, with_moments=False, backend=None):
    impl = _resolve(backend)
    return impl.summary_block(bit_generator, dist, n, reps, with_moments)


def sample_summaries(
    dist: DistributionSpec,
    n: int,
    reps: int,
    seed: int,
    *,
    with_moments: bool = False,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Five-number summaries (and optional moments) of ``reps`` samples of size n.

    Deterministic in ``seed`` and independent of ``workers`` and backend.
    """
    validate_distribution(dist)
    check_seed(seed)
    if workers < 1:
        raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
    impl = _resolve(backend)
    counts = block_sizes(reps, block_size)
    bit_gens = block_bit_generators(seed, len(counts))
    out = np.empty((reps, 7 if with_moments else 5))
    starts = np.concatenate([[0], np.cumsum(counts)])

    def run(i: int) -> None:
        lo = starts[i]
        out[lo:lo + counts[i]] = impl.summary_block(bit_gens[i], dist, n, counts[i], with_moments)

    if workers == 1 or len(counts) == 1:
        for i in range(len(counts)):
            run(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(len(counts))))
    return out


def _resolve(backend: str | None):
    if backend is None:
        return _impl
    table = available_backends()
    if backend not in table:
        raise InvalidArgumentError(
            f"backend {backend!r} not available (have: {sorted(table)})")
    return table[backend]
