"""Grey KNN local density: for each object, the sum of its k largest degrees.

An object deep inside a cluster has many close neighbors with degrees near
1, so its density approaches k; border objects and outliers score lower.
The neighbor set never includes the object itself (its self-degree of 1
would blunt the indicator).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import KOutOfRange
from .grey import GreyMatrix, as_matrix, degree_block

logger = logging.getLogger(__name__)

_CHUNK_ROWS = 256


@dataclass(frozen=True)
class DensityProfile:
    """Per-object densities, their descending order, and the k that produced them."""

    rho: np.ndarray
    order: np.ndarray
    k: int

    def __post_init__(self):
        rho = np.ascontiguousarray(self.rho, dtype=np.float64)
        order = np.ascontiguousarray(self.order, dtype=np.int64)
        if rho.ndim != 1 or order.shape != rho.shape:
            raise ValueError("rho and order must be 1-D arrays of equal length")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not np.all((rho > 0.0) & (rho <= self.k + 1e-9)):
            raise ValueError("densities must lie in (0, k]")
        if not np.array_equal(np.sort(order), np.arange(rho.size)):
            raise ValueError("order must be a permutation of 0..n-1")
        if np.any(np.diff(rho[order]) > 0.0):
            raise ValueError("order must sort rho in descending order")
        rho.setflags(write=False)
        order.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    @property
    def sorted_rho(self) -> np.ndarray:
        return self.rho[self.order]


def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= n - 1:
        raise KOutOfRange(f"k must lie in [1, {n - 1}], got {k}")
    if k >= max(2, n // 2):
        logger.warning("k=%d is large relative to n=%d and may exceed the size "
                       "of the smallest dense family", k, n)


def _topk_row_sums(rows: np.ndarray, diag_offset: int, k: int) -> np.ndarray:
    """Sum of the k largest off-diagonal entries per row.

    The selected values are sorted ascending before summing, so the result
    does not depend on how ties at the k-th place are broken.
    """
    rows = rows.copy()
    c = rows.shape[0]
    rows[np.arange(c), np.arange(c) + diag_offset] = -np.inf
    top = np.partition(rows, rows.shape[1] - k, axis=1)[:, rows.shape[1] - k:]
    return np.sort(top, axis=1).sum(axis=1)


def _profile_from_rho(rho: np.ndarray, k: int) -> DensityProfile:
    order = np.argsort(-rho, kind="stable")  # ties resolved toward smaller index
    return DensityProfile(rho, order, k)


def grey_knn_density(G: GreyMatrix, k: int) -> DensityProfile:
    """Density of every object from a precomputed degree matrix.

    rho_i sums the k largest G(i, j) over j != i; ties on G(i, .) are
    broken toward the smaller object index (which cannot change the sum).
    """
    n = G.n
    _check_k(k, n)
    rho = np.empty(n, dtype=np.float64)
    for start in range(0, n, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, n)
        rho[start:stop] = _topk_row_sums(G.values[start:stop], start, k)
    return _profile_from_rho(rho, k)


def grey_knn_density_chunked(dataset, k: int, chunk: int = _CHUNK_ROWS) -> DensityProfile:
    """Same profile as :func:`grey_knn_density`, without materializing the matrix.

    Degree rows are generated in chunks and reduced on the fly; the result
    is bitwise identical to the matrix-backed path.  Use this for large n
    where the n x n matrix would not fit comfortably in memory.
    """
    data = as_matrix(dataset)
    n = data.shape[0]
    _check_k(k, n)
    rho = np.empty(n, dtype=np.float64)
    for start in range(0, n, max(chunk, 1)):
        stop = min(start + max(chunk, 1), n)
        rows = degree_block(data[start:stop], data)
        rho[start:stop] = _topk_row_sums(rows, start, k)
    return _profile_from_rho(rho, k)
