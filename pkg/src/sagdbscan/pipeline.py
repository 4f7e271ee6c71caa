"""End-to-end pipeline: similarity, density, dense subset, DBSCAN, assignment.

The stages of a run, in order:

1. optional per-feature min-max normalization,
2. pairwise grey relational degrees,
3. grey KNN density with neighbor count k,
4. self-adaptive dense-subset extraction from the sorted density curve,
5. DBSCAN over the dense subset with MinPts = m and the automatic radius,
6. iterative nearest-pair assignment of the remaining objects.

k and m default to a schedule keyed on the dataset size; both can be
overridden.  A run is a pure function of the dataset and its parameters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .data import Clustering, Dataset, Origin
from .dbscan import METRICS, DbscanParams, auto_eps, distance_rows, run_dbscan
from .dense_subset import SplitSearchResult, find_dense_subset
from .density import DensityProfile, grey_knn_density, grey_knn_density_chunked
from .errors import (
    DegenerateDenseSubset,
    InvalidParameter,
    KOutOfRange,
    NoLabeledSeed,
    TooFewObjects,
)
from .grey import GreyMatrix, as_matrix, grey_matrix

MIN_PIPELINE_OBJECTS = 20

# Above this size the degree matrix is streamed instead of materialized
# (the matrix itself costs 8 * n^2 bytes).
DENSE_MATRIX_LIMIT = 6000


@dataclass(frozen=True)
class AutoParams:
    """Neighbor count k and DBSCAN MinPts m, plus where they came from."""

    k: int
    m: int
    source: str = "auto"  # "auto" = size schedule, "override" = user supplied


@dataclass(frozen=True)
class PipelineReport:
    """Everything a run produced: the clustering plus per-stage context."""

    clustering: Clustering
    params: AutoParams
    dbscan: DbscanParams
    dense_size: int
    cluster_count: int
    timings: dict[str, float]
    profile: DensityProfile
    split: SplitSearchResult
    n: int
    normalized: bool
    grey: GreyMatrix | None = field(default=None, repr=False)


def compute_auto_params(n: int) -> AutoParams:
    """Size-keyed parameter schedule.

    m steps 3 / 4 / 5 / 10 at n = 500, 1000 and 5000; k is ceil(2% of n)
    below 1000, ceil(1% of n) below 2000, then a flat 20.  k uses integer
    arithmetic so the ceiling never suffers float rounding.
    """
    if n < MIN_PIPELINE_OBJECTS:
        raise TooFewObjects(f"pipeline needs at least {MIN_PIPELINE_OBJECTS} objects, got {n}")
    if n < 500:
        m = 3
    elif n < 1000:
        m = 4
    elif n < 5000:
        m = 5
    else:
        m = 10
    if n < 1000:
        k = (2 * n + 99) // 100
    elif n < 2000:
        k = (n + 99) // 100
    else:
        k = 20
    return AutoParams(k=k, m=m, source="auto")


def minmax_normalize(data: np.ndarray) -> np.ndarray:
    """Per-feature min-max scaling to [0, 1]; constant features map to 0."""
    lo = data.min(axis=0)
    span = data.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return (data - lo) / span


def assign_remainder(dataset, partial: Clustering, metric: str = "euclidean") -> Clustering:
    """Attach every unlabeled object to the cluster of its nearest labeled one.

    One object moves per step: the globally closest (labeled, unlabeled)
    pair is found, the unlabeled side inherits the label and immediately
    becomes an anchor for later steps (chains are allowed).  Ties prefer
    the smaller labeled index, then the smaller unlabeled index.
    """
    data = as_matrix(dataset)
    n = data.shape[0]
    labels = np.array(partial.assignments, dtype=np.int64)
    origin = np.array(partial.origin, dtype=np.int8)
    if labels.shape[0] != n:
        raise ValueError("clustering length must match the dataset")
    unlabeled = labels < 0
    if not unlabeled.any():
        return partial
    if bool(unlabeled.all()):
        raise NoLabeledSeed("no labeled object to anchor the assignment")

    best = np.full(n, np.inf)
    anchor = np.full(n, n, dtype=np.int64)
    for i in np.flatnonzero(~unlabeled):
        row = distance_rows(data, np.asarray([int(i)]), metric)[0]
        closer = unlabeled & (row < best)  # ascending i: first hit is the smallest anchor
        best[closer] = row[closer]
        anchor[closer] = i

    remaining = int(unlabeled.sum())
    for _ in range(remaining):
        d = np.where(unlabeled, best, np.inf)
        m = d.min()
        cand = np.flatnonzero(d == m)
        cand = cand[anchor[cand] == anchor[cand].min()]
        j = int(cand.min())
        labels[j] = labels[anchor[j]]
        origin[j] = Origin.ASSIGNED_REMAINDER
        unlabeled[j] = False
        row = distance_rows(data, np.asarray([j]), metric)[0]
        closer = unlabeled & (row < best)
        best[closer] = row[closer]
        anchor[closer] = j
        equal = unlabeled & (row == best) & (j < anchor)
        anchor[equal] = j
    return Clustering(labels, origin)


def run_sag_dbscan(
    dataset: Dataset,
    k: int | None = None,
    m: int | None = None,
    metric: str = "euclidean",
    normalize: bool = False,
    regression: str = "ols",
    keep_grey: bool = False,
    dense_matrix_limit: int = DENSE_MATRIX_LIMIT,
) -> PipelineReport:
    """Run the whole pipeline on a dataset and report every stage's outcome.

    Parameters
    ----------
    dataset : Dataset
        At least 20 objects.
    k, m : int, optional
        Override the size schedule (k: density neighbors, m: DBSCAN MinPts).
    metric : {"euclidean", "grey"}
        Distance used by DBSCAN and remainder assignment; "grey" means
        1 - degree.
    normalize : bool
        Min-max scale every feature to [0, 1] first.
    regression : {"ols", "l1"}
        Segment-fit flavor for the dense-subset split search.
    keep_grey : bool
        Materialize and keep the full degree matrix on the report even for
        large n (needed to dump it).

    Returns
    -------
    PipelineReport
        Final clustering (every object labeled, ids contiguous from 0),
        chosen parameters, dense-subset size, cluster count and timings.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    n = dataset.n
    if n < MIN_PIPELINE_OBJECTS:
        raise TooFewObjects(f"pipeline needs at least {MIN_PIPELINE_OBJECTS} objects, got {n}")
    auto = compute_auto_params(n)
    if k is not None and not 1 <= k <= n - 1:
        raise KOutOfRange(f"k must lie in [1, {n - 1}], got {k}")
    if m is not None and m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    params = AutoParams(
        k=k if k is not None else auto.k,
        m=m if m is not None else auto.m,
        source="override" if (k is not None or m is not None) else "auto",
    )

    timings: dict[str, float] = {}
    started = time.perf_counter()
    data = minmax_normalize(dataset.data) if normalize else dataset.data

    t0 = time.perf_counter()
    grey: GreyMatrix | None = None
    if keep_grey or n <= dense_matrix_limit:
        grey = grey_matrix(data)
        profile = grey_knn_density(grey, params.k)
    else:
        profile = grey_knn_density_chunked(data, params.k)
    timings["grey_density"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    split = find_dense_subset(profile, regression=regression)
    timings["dense_subset"] = time.perf_counter() - t0
    mask = split.member_mask
    dense_size = int(mask.sum())
    if dense_size < params.m + 1:
        raise DegenerateDenseSubset(
            f"dense subset has {dense_size} members, need at least m+1={params.m + 1}")

    t0 = time.perf_counter()
    dense_data = data[mask]
    eps = auto_eps(dense_data, params.m, metric)
    dbscan_params = DbscanParams(min_pts=params.m, eps=eps, metric=metric)
    sub = run_dbscan(dense_data, dbscan_params)
    timings["dbscan"] = time.perf_counter() - t0

    assignments = np.full(n, -1, dtype=np.int64)
    assignments[np.flatnonzero(mask)] = sub.assignments
    origin = np.where(assignments >= 0, Origin.DENSE_CORE, Origin.ASSIGNED_REMAINDER)
    partial = Clustering(assignments, origin.astype(np.int8))

    t0 = time.perf_counter()
    final = assign_remainder(data, partial, metric)
    timings["assignment"] = time.perf_counter() - t0
    timings["total"] = time.perf_counter() - started

    return PipelineReport(
        clustering=final,
        params=params,
        dbscan=dbscan_params,
        dense_size=dense_size,
        cluster_count=int(np.unique(final.assignments).size),
        timings=timings,
        profile=profile,
        split=split,
        n=n,
        normalized=normalize,
        grey=grey if keep_grey else None,
    )
