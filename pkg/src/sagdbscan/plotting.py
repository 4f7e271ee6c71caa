"""Scatter rendering of 2-D clustering results to SVG files."""

from __future__ import annotations

import numpy as np
from matplotlib import colormaps

from .data import Clustering, Dataset, Origin
from .errors import NotTwoDimensional

_PALETTE = colormaps["tab20"].colors


def cluster_colors(ids: np.ndarray) -> list:
    return [_PALETTE[i % len(_PALETTE)] for i in ids]


def plot_scatter(dataset: Dataset, clustering: Clustering, path) -> None:
    """Render a cluster-colored scatter of a 2-D dataset as SVG.

    Objects labeled during remainder assignment get a black marker outline;
    dense-core objects are drawn without one.  The palette cycles when
    there are more clusters than colors.
    """
    if dataset.n_features != 2:
        raise NotTwoDimensional(f"scatter needs 2 features, got {dataset.n_features}")
    import matplotlib.pyplot as plt  # deferred: keeps library import light

    ids = clustering.assignments
    core = clustering.origin == Origin.DENSE_CORE

    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    for mask, edge in ((core, "none"), (~core, "black")):
        if mask.any():
            ax.scatter(dataset.data[mask, 0], dataset.data[mask, 1],
                       s=18, c=cluster_colors(ids[mask]),
                       edgecolors=edge, linewidths=0.5)
    ax.set_aspect("equal", adjustable="datalim")
    n_clusters = int(np.unique(ids[ids >= 0]).size)
    ax.set_title(f"{dataset.name}: {n_clusters} clusters")
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
