# distutils: language = c++
"""Compiled five-number sampling kernel.

Row-by-row generation keeps the working set cache-resident instead of
materialising (reps, n) sample matrices. Consumes the bit-generator stream in
exactly the order the NumPy backend does (see ``distributions``), so both
backends return identical summaries for the same block generator.
"""

import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport exp, fabs, sqrt
from libcpp.algorithm cimport nth_element
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (
    random_standard_normal_fill,
    random_standard_uniform_fill,
)

from .distributions import (
    HalfNormal,
    LogNormal,
    MixtureNormal,
    Normal,
    SkewNormal,
    validate_distribution,
)
from .positions import summary_positions
from .rng import chunk_reps

cnp.import_array()

BACKEND = "c"

cdef enum:
    D_NORMAL = 0
    D_SKEW = 1
    D_HALF = 2
    D_LOG = 3
    D_MIX = 4


cdef inline void _select_five(double *x, Py_ssize_t n, Py_ssize_t q1i,
                              Py_ssize_t mlo, Py_ssize_t mhi, Py_ssize_t q3i,
                              double *out5) noexcept nogil:
    # Chained quickselect left to right; each step only touches the slice
    # right of the previously placed rank (positions satisfy
    # 0 < q1i < mlo <= mhi < q3i < n-1 for every n >= 5). Small rows are
    # cheaper to sort outright.
    cdef Py_ssize_t j, k, best_idx
    cdef double best, tmp
    if n <= 32:
        for j in range(1, n):
            tmp = x[j]
            k = j
            while k > 0 and x[k - 1] > tmp:
                x[k] = x[k - 1]
                k -= 1
            x[k] = tmp
        out5[0] = x[0]
        out5[1] = x[q1i]
        out5[2] = 0.5 * (x[mlo] + x[mhi])
        out5[3] = x[q3i]
        out5[4] = x[n - 1]
        return
    nth_element(x, x, x + n)
    nth_element(x + 1, x + q1i, x + n)
    nth_element(x + q1i + 1, x + mlo, x + n)
    if mhi != mlo:
        best_idx = mlo + 1
        for j in range(mlo + 2, n):
            if x[j] < x[best_idx]:
                best_idx = j
        tmp = x[mhi]; x[mhi] = x[best_idx]; x[best_idx] = tmp
        nth_element(x + mhi + 1, x + q3i, x + n)
    else:
        nth_element(x + mlo + 1, x + q3i, x + n)
    best = x[q3i + 1]
    for j in range(q3i + 2, n):
        if x[j] > best:
            best = x[j]
    out5[0] = x[0]
    out5[1] = x[q1i]
    out5[2] = 0.5 * (x[mlo] + x[mhi])
    out5[3] = x[q3i]
    out5[4] = best


def summary_block(bit_generator, dist, Py_ssize_t n, Py_ssize_t reps,
                  bint with_moments=False):
    """(reps, 5) five-number summaries, or (reps, 7) with mean and SD appended."""
    validate_distribution(dist)
    if reps < 1:
        raise ValueError("reps must be >= 1")
    positions = summary_positions(n)
    cdef Py_ssize_t q1i = positions[0], mlo = positions[1]
    cdef Py_ssize_t mhi = positions[2], q3i = positions[3]

    cdef int kind
    cdef double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0
    if isinstance(dist, Normal):
        kind = D_NORMAL; c0 = dist.mu; c1 = dist.sigma
    elif isinstance(dist, SkewNormal):
        kind = D_SKEW; c0 = dist.loc; c1 = dist.omega
        c2 = dist.delta; c3 = sqrt(1.0 - c2 * c2)
    elif isinstance(dist, HalfNormal):
        kind = D_HALF; c0 = dist.mu; c1 = dist.sigma
    elif isinstance(dist, LogNormal):
        kind = D_LOG; c0 = dist.mu; c1 = dist.sigma
    else:
        kind = D_MIX; c0 = dist.p; c1 = dist.mu1; c2 = dist.sigma1
        c3 = dist.mu2; c4 = dist.sigma2

    cdef Py_ssize_t k = 2 if kind == D_SKEW else 1
    cdef Py_ssize_t chunk = chunk_reps(n, k)
    cdef Py_ssize_t ncols = 7 if with_moments else 5

    out = np.empty((reps, ncols), dtype=np.float64)
    zrow = np.empty(k * n, dtype=np.float64)
    xrow = np.empty(n, dtype=np.float64)
    ubuf = np.empty(chunk * n, dtype=np.float64) if kind == D_MIX else np.empty(1)

    cdef double[:, ::1] out_v = out
    cdef double[::1] z = zrow
    cdef double[::1] x = xrow
    cdef double[::1] u = ubuf

    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")

    cdef Py_ssize_t done = 0, m, i, j, row
    cdef double s, ss, d, mean, sd
    with bit_generator.lock, nogil:
        while done < reps:
            m = chunk if reps - done > chunk else reps - done
            if kind == D_MIX:
                random_standard_uniform_fill(rng, m * n, &u[0])
            for i in range(m):
                random_standard_normal_fill(rng, k * n, &z[0])
                if kind == D_NORMAL:
                    for j in range(n):
                        x[j] = c0 + c1 * z[j]
                elif kind == D_SKEW:
                    for j in range(n):
                        x[j] = c0 + c1 * (c2 * fabs(z[j]) + c3 * z[n + j])
                elif kind == D_HALF:
                    for j in range(n):
                        x[j] = c0 + c1 * fabs(z[j])
                elif kind == D_LOG:
                    for j in range(n):
                        x[j] = exp(c0 + c1 * z[j])
                else:
                    for j in range(n):
                        if u[i * n + j] < c0:
                            x[j] = c1 + c2 * z[j]
                        else:
                            x[j] = c3 + c4 * z[j]
                row = done + i
                if with_moments:
                    s = 0.0
                    for j in range(n):
                        s += x[j]
                    mean = s / n
                    ss = 0.0
                    for j in range(n):
                        d = x[j] - mean
                        ss += d * d
                    sd = sqrt(ss / (n - 1))
                    out_v[row, 5] = mean
                    out_v[row, 6] = sd
                _select_five(&x[0], n, q1i, mlo, mhi, q3i, &out_v[row, 0])
            done += m
    return out
