"""B-style grey relational degree between objects and the full pairwise matrix.

The degree of two feature vectors a, b combines three absolute-difference
sums of the gap vector g = a - b:

    d0 = sum_k |g_k|                      (level differences)
    d1 = sum_k |g_{k+1} - g_k|            (first differences)
    d2 = sum_k |g_{k+1} - 2 g_k + g_{k-1}| (second differences)

    degree = 1 / (1 + d0/N + d1/(N-1) + d2/(N-2))

A term whose defining sum is empty contributes 0 to the denominator: for
N = 1 only d0 remains, for N = 2 the d2 term vanishes.  The result lies in
(0, 1] and equals 1 exactly when a == b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DimensionMismatch, NonFiniteInput

_CHUNK_ROWS = 256


def degree_block(block: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Degrees between every row of `block` and every row of `data`.

    Arithmetic runs along the feature axis only, so results are bitwise
    independent of how callers slice the row axis.
    """
    gaps = block[:, None, :] - data[None, :, :]
    n_feat = gaps.shape[-1]
    denom = 1.0 + np.abs(gaps).sum(axis=-1) / n_feat
    if n_feat >= 2:
        first = np.diff(gaps, axis=-1)
        denom += np.abs(first).sum(axis=-1) / (n_feat - 1)
        if n_feat >= 3:
            denom += np.abs(np.diff(first, axis=-1)).sum(axis=-1) / (n_feat - 2)
    return 1.0 / denom


def grey_degree(a, b) -> float:
    """B-style grey relational degree of two equal-length feature vectors.

    Parameters
    ----------
    a, b : array-like of float
        Feature vectors of the same length N >= 1; all entries finite.

    Returns
    -------
    float
        Degree in (0, 1]; 1.0 iff the vectors are identical.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimensionMismatch(f"vector lengths differ: {a.size} vs {b.size}")
    if a.size < 1:
        raise DimensionMismatch("vectors must have at least one component")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NonFiniteInput("vectors must be finite")
    return float(degree_block(a[None, :], b[None, :])[0, 0])


@dataclass(frozen=True)
class GreyMatrix:
    """Symmetric n x n matrix of pairwise degrees, unit diagonal, entries in (0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 1:
            raise ValueError("grey matrix must be square and non-empty")
        if not np.all((values > 0.0) & (values <= 1.0)):
            raise ValueError("grey degrees must lie in (0, 1]")
        if not np.all(np.diagonal(values) == 1.0):
            raise ValueError("grey matrix diagonal must be exactly 1")
        if not np.array_equal(values, values.T):
            raise ValueError("grey matrix must be symmetric")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def as_matrix(dataset) -> np.ndarray:
    """Accept a Dataset or a plain 2-D array and return the float64 matrix."""
    if isinstance(dataset, Dataset):
        return dataset.data
    data = np.ascontiguousarray(dataset, dtype=np.float64)
    if data.ndim != 2:
        raise ValueError("expected a 2-D data matrix")
    return data


def grey_matrix(dataset, chunk: int = _CHUNK_ROWS) -> GreyMatrix:
    """Full pairwise degree matrix, computed in row chunks.

    The chunk size only bounds peak memory; the entries are bitwise
    identical for any chunking.
    """
    data = as_matrix(dataset)
    n = data.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for start in range(0, n, max(chunk, 1)):
        stop = min(start + max(chunk, 1), n)
        out[start:stop] = degree_block(data[start:stop], data)
    return GreyMatrix(out)
