"""Dataset containers, CSV input/output and synthetic dataset generators.

All containers are immutable after construction (their numpy buffers are
marked read-only), so they can be shared across threads freely.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np

from .errors import (
    InvalidSpread,
    IoError,
    NonFiniteValue,
    ParseError,
    RaggedRows,
    TooFewPoints,
)


class Origin(IntEnum):
    """How an object received its final cluster id."""

    DENSE_CORE = 0
    ASSIGNED_REMAINDER = 1


ORIGIN_NAMES = {Origin.DENSE_CORE: "core", Origin.ASSIGNED_REMAINDER: "assigned"}
_NAMES_TO_ORIGIN = {v: k for k, v in ORIGIN_NAMES.items()}


@dataclass(frozen=True)
class Dataset:
    """An immutable numeric matrix of n objects x n_features, with optional labels."""

    data: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"

    def __post_init__(self):
        data = np.ascontiguousarray(self.data, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("data must be a 2-D matrix with at least one row and column")
        if not np.all(np.isfinite(data)):
            raise NonFiniteValue("dataset contains NaN or infinite entries")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.labels is not None:
            labels = np.ascontiguousarray(self.labels, dtype=np.int64)
            if labels.shape != (data.shape[0],):
                raise ValueError("labels length must equal the number of rows")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def n_features(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class Clustering:
    """Per-object cluster ids (-1 = not yet assigned) plus provenance flags."""

    assignments: np.ndarray
    origin: np.ndarray

    def __post_init__(self):
        assignments = np.ascontiguousarray(self.assignments, dtype=np.int64)
        origin = np.ascontiguousarray(self.origin, dtype=np.int8)
        if assignments.ndim != 1 or origin.shape != assignments.shape:
            raise ValueError("assignments and origin must be 1-D arrays of equal length")
        if assignments.min(initial=0) < -1:
            raise ValueError("cluster ids must be >= -1")
        ids = np.unique(assignments[assignments >= 0])
        if ids.size and not np.array_equal(ids, np.arange(ids.size)):
            raise ValueError("cluster ids must be contiguous integers starting at 0")
        assignments.setflags(write=False)
        origin.setflags(write=False)
        object.__setattr__(self, "assignments", assignments)
        object.__setattr__(self, "origin", origin)

    @property
    def n(self) -> int:
        return self.assignments.shape[0]

    @property
    def is_final(self) -> bool:
        return bool(np.all(self.assignments >= 0))


def _parses_as_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, label_column: int | None = None) -> Dataset:
    """Load a comma-separated dataset, optionally extracting a label column.

    A single leading header row is skipped automatically when any of its
    non-label cells fails to parse as a number.  Row/column positions in
    error messages are 1-based file coordinates.
    """
    p = Path(path)
    try:
        with p.open(newline="", encoding="utf-8") as fh:
            raw = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), 1)
                   if any(cell.strip() for cell in row)]
    except OSError as exc:
        raise IoError(f"cannot read {p}: {exc}") from exc
    if not raw:
        raise ParseError(f"{p}: no data rows")

    arity = len(raw[0][1])
    if label_column is not None and not 0 <= label_column < arity:
        raise ParseError(f"{p}: label column {label_column} out of range for {arity} columns")

    # a header row is one where no non-label cell is numeric; a mixed first
    # row is treated as data so malformed cells are reported, not swallowed
    first_cells = [c for i, c in enumerate(raw[0][1]) if i != label_column]
    if first_cells and not any(_parses_as_float(c) for c in first_cells):
        raw = raw[1:]
        if not raw:
            raise ParseError(f"{p}: no data rows after header")

    rows: list[list[float]] = []
    raw_labels: list[str] = []
    for lineno, row in raw:
        if len(row) != arity:
            raise RaggedRows(f"{p}: row {lineno} has {len(row)} columns, expected {arity}")
        values = []
        for col, cell in enumerate(row):
            if col == label_column:
                raw_labels.append(cell.strip())
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f"{p}: row {lineno} col {col + 1}: cannot parse {cell!r}") from None
            if not math.isfinite(value):
                raise NonFiniteValue(f"{p}: row {lineno} col {col + 1}: non-finite value {cell!r}")
            values.append(value)
        rows.append(values)

    labels = _encode_labels(raw_labels) if label_column is not None else None
    return Dataset(np.asarray(rows, dtype=np.float64), labels=labels, name=p.stem)


def _encode_labels(raw: list[str]) -> np.ndarray:
    """Keep integer class ids as-is; map anything else to first-appearance codes."""
    numeric = []
    for cell in raw:
        try:
            value = float(cell)
        except ValueError:
            break
        if not value.is_integer() or value < 0:
            break
        numeric.append(int(value))
    else:
        return np.asarray(numeric, dtype=np.int64)
    codes: dict[str, int] = {}
    return np.asarray([codes.setdefault(cell, len(codes)) for cell in raw], dtype=np.int64)


def write_result(clustering: Clustering, path) -> None:
    """Write `index,cluster,origin` rows, one per object, in dataset order."""
    if not clustering.is_final:
        raise ValueError("clustering has unassigned objects (-1 entries)")
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "cluster", "origin"])
            for i in range(clustering.n):
                writer.writerow([
                    i,
                    int(clustering.assignments[i]),
                    ORIGIN_NAMES[Origin(clustering.origin[i])],
                ])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_result(path) -> Clustering:
    """Read back a file produced by :func:`write_result`."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["index", "cluster", "origin"]:
                raise ParseError(f"{path}: unexpected header {header!r}")
            rows = [(int(r[0]), int(r[1]), _NAMES_TO_ORIGIN[r[2]]) for r in reader if r]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    rows.sort()
    assignments = np.asarray([r[1] for r in rows], dtype=np.int64)
    origin = np.asarray([r[2] for r in rows], dtype=np.int8)
    return Clustering(assignments, origin)


def write_dataset(dataset: Dataset, path) -> None:
    """Write the feature matrix as CSV, appending the label column when present.

    Floats are serialized with shortest round-trip repr, so reloading
    reproduces the matrix bit for bit.
    """
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            for i in range(dataset.n):
                row = [repr(float(v)) for v in dataset.data[i]]
                if dataset.labels is not None:
                    row.append(str(int(dataset.labels[i])))
                writer.writerow(row)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# --- generators -------------------------------------------------------------


def generate_blobs(centers, points_per_center: int, spread: float, seed: int) -> Dataset:
    """Sample isotropic Gaussian blobs around the given centers.

    Labels are the center indices.  Output is a pure function of the
    arguments (bitwise identical for a fixed seed).
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if centers.shape[0] < 1:
        raise ValueError("need at least one center")
    if not spread > 0:
        raise InvalidSpread(f"spread must be > 0, got {spread}")
    if points_per_center < 1:
        raise ValueError("points_per_center must be >= 1")
    rng = np.random.default_rng(seed)
    parts = [c + rng.normal(0.0, spread, size=(points_per_center, centers.shape[1]))
             for c in centers]
    labels = np.repeat(np.arange(centers.shape[0]), points_per_center)
    return Dataset(np.vstack(parts), labels=labels,
                   name=f"blobs-{centers.shape[0]}x{points_per_center}-s{seed}")


# ShapeT geometry: one T-shaped cluster (two axis-aligned rectangles) and two
# discs placed clear of it.  Rectangles are (xmin, xmax, ymin, ymax).
T_BAR = (0.0, 10.0, 8.0, 10.0)
T_STEM = (4.0, 6.0, 0.0, 8.0)
DISCS = (((16.0, 8.0), 2.0), ((16.0, 2.0), 2.0))
_NOISE_BOX = (-2.0, 20.0, -2.0, 12.0)


def _rect_area(r):
    return (r[1] - r[0]) * (r[3] - r[2])


def _rect_distance(xy, rect):
    dx = np.maximum(np.maximum(rect[0] - xy[:, 0], xy[:, 0] - rect[1]), 0.0)
    dy = np.maximum(np.maximum(rect[2] - xy[:, 1], xy[:, 1] - rect[3]), 0.0)
    return np.hypot(dx, dy)


def shape_t_region_distances(xy: np.ndarray) -> np.ndarray:
    """Distance of each 2-D point to the three ShapeT cluster regions (0 inside)."""
    xy = np.atleast_2d(np.asarray(xy, dtype=np.float64))
    d_t = np.minimum(_rect_distance(xy, T_BAR), _rect_distance(xy, T_STEM))
    cols = [d_t]
    for center, radius in DISCS:
        cols.append(np.maximum(np.hypot(xy[:, 0] - center[0], xy[:, 1] - center[1]) - radius, 0.0))
    return np.column_stack(cols)


def _proportional_counts(total: int, weights) -> list[int]:
    """Largest-remainder allocation; deterministic, sums to total."""
    weights = np.asarray(weights, dtype=np.float64)
    shares = weights / weights.sum() * total
    counts = np.floor(shares).astype(int)
    remainder = total - counts.sum()
    order = np.argsort(-(shares - counts), kind="stable")
    for i in range(remainder):
        counts[order[i]] += 1
    return counts.tolist()


def generate_shape_t(points: int, noise_fraction: float, seed: int) -> Dataset:
    """Generate the 2-D, 3-cluster ShapeT benchmark: a T plus two discs.

    Points are uniform over the union of the regions (cluster sizes follow
    region areas), labels are the region index.  A `noise_fraction` share is
    sampled uniformly from a box around the shapes instead and labeled with
    the nearest region.
    """
    if points < 30:
        raise TooFewPoints(f"shape_t needs at least 30 points, got {points}")
    if not 0.0 <= noise_fraction < 1.0:
        raise ValueError("noise_fraction must lie in [0, 1)")
    rng = np.random.default_rng(seed)

    n_noise = int(round(points * noise_fraction))
    areas = [_rect_area(T_BAR) + _rect_area(T_STEM)] + [math.pi * r * r for _, r in DISCS]
    n_t, n_d1, n_d2 = _proportional_counts(points - n_noise, areas)

    bar_share = _rect_area(T_BAR) / areas[0]
    in_bar = rng.random(n_t) < bar_share
    t_pts = np.empty((n_t, 2))
    for rect, mask in ((T_BAR, in_bar), (T_STEM, ~in_bar)):
        count = int(mask.sum())
        t_pts[mask, 0] = rng.uniform(rect[0], rect[1], count)
        t_pts[mask, 1] = rng.uniform(rect[2], rect[3], count)

    disc_parts = []
    for (center, radius), count in zip(DISCS, (n_d1, n_d2)):
        r = radius * np.sqrt(rng.random(count))
        theta = rng.random(count) * 2.0 * math.pi
        disc_parts.append(np.column_stack([center[0] + r * np.cos(theta),
                                           center[1] + r * np.sin(theta)]))

    noise = np.column_stack([rng.uniform(_NOISE_BOX[0], _NOISE_BOX[1], n_noise),
                             rng.uniform(_NOISE_BOX[2], _NOISE_BOX[3], n_noise)])
    noise_labels = (np.argmin(shape_t_region_distances(noise), axis=1)
                    if n_noise else np.empty(0, dtype=np.int64))

    data = np.vstack([t_pts, *disc_parts, noise])
    labels = np.concatenate([
        np.zeros(n_t, dtype=np.int64),
        np.ones(n_d1, dtype=np.int64),
        np.full(n_d2, 2, dtype=np.int64),
        noise_labels.astype(np.int64),
    ])
    return Dataset(data, labels=labels, name=f"shapet-{points}-s{seed}")
