"""DBSCAN over the dense subset, with the automatic radius rule.

The radius is set to the largest m-th-neighbor distance inside the subset.
With MinPts = m counting neighbors excluding the point itself, that choice
makes every member a core point, so the clustering equals the connected
components of the radius graph and carries no noise.  Arbitrary parameters
are also supported (then border points and noise follow the classic
scan-order semantics: points are visited by ascending index and a border
point is claimed by the first cluster that reaches it).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .data import Clustering, Origin
from .errors import InvalidParameter, SubsetDegenerate, SubsetTooSmall
from .grey import as_matrix, degree_block

METRICS = ("euclidean", "grey")

_CHUNK_ROWS = 512


def distance_rows(data: np.ndarray, block: np.ndarray, metric: str) -> np.ndarray:
    """Distances from each row index in `block` to all rows of `data`."""
    if metric == "euclidean":
        diff = data[block][:, None, :] - data[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))
    if metric == "grey":
        return 1.0 - degree_block(data[block], data)
    raise ValueError(f"metric must be one of {METRICS}")


@dataclass(frozen=True)
class DbscanParams:
    """Radius, neighbor threshold and the distance used by both."""

    min_pts: int
    eps: float
    metric: str = "euclidean"

    def __post_init__(self):
        if self.min_pts < 1:
            raise InvalidParameter(f"min_pts must be >= 1, got {self.min_pts}")
        if not self.eps > 0.0:
            raise SubsetDegenerate(f"eps must be > 0, got {self.eps}")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}")


def auto_eps(subset, m: int, metric: str = "euclidean") -> float:
    """Largest m-th-nearest-neighbor distance within the subset (self excluded).

    Returns 0.0 when every point has m duplicates; callers treat that as a
    degenerate subset.
    """
    data = as_matrix(subset)
    n = data.shape[0]
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    if n < m + 1:
        raise SubsetTooSmall(f"need at least m+1={m + 1} members, got {n}")
    worst = 0.0
    for start in range(0, n, _CHUNK_ROWS):
        block = np.arange(start, min(start + _CHUNK_ROWS, n))
        rows = distance_rows(data, block, metric)
        rows[np.arange(block.size), block] = np.inf
        kth = np.partition(rows, m - 1, axis=1)[:, m - 1]
        worst = max(worst, float(kth.max()))
    return worst


_UNVISITED = -2
_NOISE = -1


def run_dbscan(subset, params: DbscanParams) -> Clustering:
    """Classic DBSCAN; a point is core iff it has >= min_pts neighbors within eps.

    Cluster ids are assigned in order of the first core point encountered by
    ascending index.  Noise keeps the id -1.  Neighborhoods are computed
    row-on-demand, so memory stays linear in the subset size.
    """
    data = as_matrix(subset)
    n = data.shape[0]
    if not params.eps > 0.0:
        raise SubsetDegenerate("eps collapsed to 0 (duplicate points)")

    def region(i: int) -> np.ndarray:
        row = distance_rows(data, np.asarray([i]), params.metric)[0]
        row[i] = np.inf
        return np.flatnonzero(row <= params.eps)

    labels = np.full(n, _UNVISITED, dtype=np.int64)
    cid = 0
    for i in range(n):
        if labels[i] != _UNVISITED:
            continue
        neighbors = region(i)
        if neighbors.size < params.min_pts:
            labels[i] = _NOISE
            continue
        labels[i] = cid
        queue = deque(neighbors.tolist())
        while queue:
            j = queue.popleft()
            if labels[j] == _NOISE:
                labels[j] = cid  # border point, already known non-core
                continue
            if labels[j] != _UNVISITED:
                continue
            labels[j] = cid
            expansion = region(j)
            if expansion.size >= params.min_pts:
                queue.extend(expansion.tolist())
        cid += 1
    return Clustering(labels, np.full(n, Origin.DENSE_CORE, dtype=np.int8))
