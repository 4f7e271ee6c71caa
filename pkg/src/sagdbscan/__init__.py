"""Self-adaptive grey-relational DBSCAN clustering.

The pipeline scores pairwise similarity with the B-style grey relational
degree, estimates a KNN-style local density from it, extracts a dense
subset by minimizing a two-segment regression residual over the sorted
density curve, clusters the subset with an auto-parameterized DBSCAN, and
attaches the remaining objects to their nearest clusters.
"""

from .data import (
    Clustering,
    Dataset,
    Origin,
    generate_blobs,
    generate_shape_t,
    load_csv,
    read_result,
    write_dataset,
    write_result,
)
from .dbscan import DbscanParams, auto_eps, run_dbscan
from .dense_subset import SmoothedCurve, SplitSearchResult, find_dense_subset, smooth, split_residual
from .density import DensityProfile, grey_knn_density, grey_knn_density_chunked
from .grey import GreyMatrix, grey_degree, grey_matrix
from .metrics import ContingencyTable, accuracy, ari, cluster_count, f_score, nmi
from .pipeline import (
    AutoParams,
    PipelineReport,
    assign_remainder,
    compute_auto_params,
    minmax_normalize,
    run_sag_dbscan,
)
from .plotting import plot_scatter

__version__ = "0.1.0"

__all__ = [
    "AutoParams",
    "Clustering",
    "ContingencyTable",
    "Dataset",
    "DbscanParams",
    "DensityProfile",
    "GreyMatrix",
    "Origin",
    "PipelineReport",
    "SmoothedCurve",
    "SplitSearchResult",
    "accuracy",
    "ari",
    "assign_remainder",
    "auto_eps",
    "cluster_count",
    "compute_auto_params",
    "f_score",
    "find_dense_subset",
    "generate_blobs",
    "generate_shape_t",
    "grey_degree",
    "grey_knn_density",
    "grey_knn_density_chunked",
    "grey_matrix",
    "load_csv",
    "minmax_normalize",
    "nmi",
    "plot_scatter",
    "read_result",
    "run_dbscan",
    "run_sag_dbscan",
    "smooth",
    "split_residual",
    "write_dataset",
    "write_result",
]
