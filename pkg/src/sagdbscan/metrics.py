"""External clustering evaluation against ground-truth labels.

Accuracy and F-Score rely on an optimal one-to-one matching between
predicted clusters and truth classes (rectangular assignment on the
contingency table, zero-padded to square).  ARI is the pair-counting Rand
index adjusted for chance; NMI normalizes mutual information by the
geometric mean of the two entropies (natural log).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .data import Clustering
from .errors import LengthMismatch


def _labels(x) -> np.ndarray:
    if isinstance(x, Clustering):
        x = x.assignments
    arr = np.asarray(x, dtype=np.int64).ravel()
    if arr.size and arr.min() < 0:
        raise ValueError("labelings must be finalized (no negative ids)")
    return arr


@dataclass(frozen=True)
class ContingencyTable:
    """Co-occurrence counts between predicted clusters and truth classes."""

    counts: np.ndarray
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    n: int

    @classmethod
    def from_labels(cls, pred, truth) -> "ContingencyTable":
        pred = _labels(pred)
        truth = _labels(truth)
        if pred.shape != truth.shape:
            raise LengthMismatch(f"lengths differ: {pred.size} vs {truth.size}")
        if pred.size == 0:
            raise ValueError("labelings must be non-empty")
        _, pi = np.unique(pred, return_inverse=True)
        _, ti = np.unique(truth, return_inverse=True)
        counts = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
        np.add.at(counts, (pi, ti), 1)
        return cls(counts, counts.sum(axis=1), counts.sum(axis=0), pred.size)


def _f1_cells(table: ContingencyTable) -> np.ndarray:
    """Class-size-weighted F1 of every (cluster, class) cell with a hit."""
    hits = table.counts.astype(np.float64)
    precision = hits / table.row_marginals[:, None]
    recall = hits / table.col_marginals[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        f1 = np.where(hits > 0, 2.0 * precision * recall / (precision + recall), 0.0)
    return table.col_marginals[None, :] * f1


def _matching(table: ContingencyTable) -> dict[int, int]:
    """Optimal one-to-one map truth class -> predicted cluster (or absent).

    The matched object count is the primary objective; among count-optimal
    matchings the weighted-F1 total breaks ties, so the F-Score below is a
    function of the partition structure alone (invariant under relabeling).
    The count term is scaled so a single extra matched object always beats
    any possible F1 difference (which is bounded by n).
    """
    t, c = table.counts.shape
    size = max(t, c)
    objective = np.zeros((size, size), dtype=np.float64)
    objective[:t, :c] = table.counts * (2.0 * table.n) + _f1_cells(table)
    rows, cols = linear_sum_assignment(objective, maximize=True)
    return {int(col): int(row) for row, col in zip(rows, cols) if row < t and col < c}


def accuracy(pred, truth) -> float:
    """Fraction of objects explained by the best one-to-one cluster/class matching."""
    table = ContingencyTable.from_labels(pred, truth)
    match = _matching(table)
    correct = sum(int(table.counts[r, c]) for c, r in match.items())
    return correct / table.n


def f_score(pred, truth) -> float:
    """Class-size-weighted F1 over the matched (cluster, class) pairs.

    Precision counts the matched class's share of its cluster, recall the
    cluster's coverage of the class; classes left unmatched contribute 0.
    """
    table = ContingencyTable.from_labels(pred, truth)
    match = _matching(table)
    total = 0.0
    for c in range(table.counts.shape[1]):
        size = int(table.col_marginals[c])
        r = match.get(c)
        if r is None:
            continue
        hit = int(table.counts[r, c])
        if hit == 0:
            continue
        precision = hit / int(table.row_marginals[r])
        recall = hit / size
        total += size * (2.0 * precision * recall / (precision + recall))
    return total / table.n


def ari(pred, truth) -> float:
    """Adjusted Rand index from the pair-counting contingency formula."""
    table = ContingencyTable.from_labels(pred, truth)

    def comb2(x):
        x = np.asarray(x, dtype=np.float64)
        return x * (x - 1.0) / 2.0

    index = comb2(table.counts).sum()
    sum_rows = comb2(table.row_marginals).sum()
    sum_cols = comb2(table.col_marginals).sum()
    total_pairs = table.n * (table.n - 1.0) / 2.0
    expected = sum_rows * sum_cols / total_pairs if total_pairs else 0.0
    max_index = (sum_rows + sum_cols) / 2.0
    if max_index == expected:
        return 1.0  # both partitions trivial and identical
    return float((index - expected) / (max_index - expected))


def _entropy(marginals: np.ndarray, n: int) -> float:
    p = marginals[marginals > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth) -> float:
    """Mutual information normalized by sqrt(H(pred) * H(truth)), natural log."""
    table = ContingencyTable.from_labels(pred, truth)
    h_pred = _entropy(table.row_marginals, table.n)
    h_truth = _entropy(table.col_marginals, table.n)
    if h_pred == 0.0 and h_truth == 0.0:
        return 1.0  # both single-cluster
    if h_pred == 0.0 or h_truth == 0.0:
        return 0.0
    nz = table.counts > 0
    joint = table.counts[nz] / table.n
    outer = np.outer(table.row_marginals, table.col_marginals)[nz] / (table.n * table.n)
    mi = float((joint * np.log(joint / outer)).sum())
    return float(np.clip(mi / np.sqrt(h_pred * h_truth), 0.0, 1.0))


def cluster_count(pred) -> int:
    """Number of distinct cluster ids in a finalized clustering."""
    return int(np.unique(_labels(pred)).size)
