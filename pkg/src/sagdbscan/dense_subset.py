"""Self-adaptive dense-subset extraction from the sorted density curve.

The descending density sequence of a clustered dataset shows two regimes: a
slowly decaying head (objects inside dense families) and a steeper tail
(border objects and noise).  After a 5-term trailing mean smooths the
sequence, every admissible split position gets scored by fitting one
straight line to each side and summing the absolute regression errors.
The split with the smallest total residual marks the density threshold;
objects at or above it form the dense subset.

Positions are 1-based ranks into the sorted sequence, matching the window
length: the first smoothed value sits at rank 5, and a split at p needs at
least 5 smoothed points on each side, so candidates run over [10, n-5].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import DensityProfile
from .errors import SplitOutOfRange, TooFewObjects

WINDOW = 5
MIN_SPLIT = 2 * WINDOW  # 5 smoothed points on the left of the first candidate

_REGRESSIONS = ("ols", "l1")


@dataclass(frozen=True)
class SmoothedCurve:
    """5-term trailing moving average of the descending density sequence.

    `values[t]` is the mean of sorted densities at ranks t+1 .. t+5, i.e.
    the smoothed value at rank t+5; the curve has n-4 entries.
    """

    values: np.ndarray
    n: int

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != (self.n - WINDOW + 1,):
            raise ValueError("curve length must be n - 4")
        scale = max(1.0, float(np.abs(values).max()))
        if np.any(np.diff(values) > 1e-12 * scale):
            raise ValueError("smoothed curve of a descending sequence must be non-increasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def ranks(self) -> np.ndarray:
        """1-based ranks at which the smoothed values sit (5..n)."""
        return np.arange(WINDOW, self.n + 1)


@dataclass(frozen=True)
class SplitSearchResult:
    """Outcome of the residual scan over all admissible split positions."""

    p_star: int
    residuals: dict[int, float]
    threshold: float
    member_mask: np.ndarray

    @property
    def dense_size(self) -> int:
        return int(self.member_mask.sum())


def smooth(profile: DensityProfile) -> SmoothedCurve:
    """Smooth the descending density sequence with a 5-term trailing mean."""
    n = profile.n
    if n < WINDOW:
        raise TooFewObjects(f"smoothing needs at least {WINDOW} objects, got {n}")
    sorted_rho = profile.sorted_rho
    windows = np.lib.stride_tricks.sliding_window_view(sorted_rho, WINDOW)
    return SmoothedCurve(windows.sum(axis=1) / WINDOW, n)


def _fit_line(x: np.ndarray, y: np.ndarray, regression: str) -> tuple[float, float]:
    """Straight-line fit; ordinary least squares or (for "l1") an IRLS
    approximation of the least-absolute-deviation line."""
    xm = x.mean()
    ym = y.mean()
    xc = x - xm
    denom = (xc * xc).sum()
    slope = float((xc * (y - ym)).sum() / denom)
    intercept = float(ym - slope * xm)
    if regression == "ols":
        return intercept, slope
    for _ in range(30):
        resid = np.abs(y - (intercept + slope * x))
        w = 1.0 / np.maximum(resid, 1e-8)
        sw = w.sum()
        xw = (w * x).sum() / sw
        yw = (w * y).sum() / sw
        xcw = x - xw
        new_slope = float((w * xcw * (y - yw)).sum() / (w * xcw * xcw).sum())
        new_intercept = float(yw - new_slope * xw)
        if abs(new_slope - slope) <= 1e-12 and abs(new_intercept - intercept) <= 1e-12:
            slope, intercept = new_slope, new_intercept
            break
        slope, intercept = new_slope, new_intercept
    return intercept, slope


def _segment_residual(x: np.ndarray, y: np.ndarray, regression: str) -> float:
    a, b = _fit_line(x, y, regression)
    return float(np.abs(y - (a + b * x)).sum())


def _residual_at(x: np.ndarray, y: np.ndarray, p: int, regression: str) -> float:
    cut = p - WINDOW + 1  # ranks 5..p on the left
    return (_segment_residual(x[:cut], y[:cut], regression)
            + _segment_residual(x[cut:], y[cut:], regression))


def split_residual(curve: SmoothedCurve, p: int, regression: str = "ols") -> float:
    """Total absolute regression error of the two lines split at rank p.

    The left line covers smoothed ranks 5..p, the right one p+1..n; both
    segments must hold at least 5 points, so p must lie in [10, n-5].
    """
    if regression not in _REGRESSIONS:
        raise ValueError(f"regression must be one of {_REGRESSIONS}")
    if not MIN_SPLIT <= p <= curve.n - WINDOW:
        raise SplitOutOfRange(f"split must lie in [{MIN_SPLIT}, {curve.n - WINDOW}], got {p}")
    x = curve.ranks.astype(np.float64)
    return _residual_at(x, curve.values, p, regression)


def find_dense_subset(profile: DensityProfile, regression: str = "ols") -> SplitSearchResult:
    """Scan every admissible split, pick the minimal-residual one, threshold there.

    Ties in the residual minimum resolve toward the smaller split (the
    larger dense subset).  An object belongs to the dense subset when its
    density is >= the sorted density at the chosen split rank.
    """
    if regression not in _REGRESSIONS:
        raise ValueError(f"regression must be one of {_REGRESSIONS}")
    n = profile.n
    if n < MIN_SPLIT + WINDOW:
        raise TooFewObjects(f"split search needs at least {MIN_SPLIT + WINDOW} objects, got {n}")
    curve = smooth(profile)
    x = curve.ranks.astype(np.float64)
    y = curve.values

    residuals: dict[int, float] = {}
    p_star = MIN_SPLIT
    best = np.inf
    for p in range(MIN_SPLIT, n - WINDOW + 1):
        r = _residual_at(x, y, p, regression)
        residuals[p] = r
        if r < best:
            best = r
            p_star = p

    threshold = float(profile.sorted_rho[p_star - 1])
    member_mask = profile.rho >= threshold
    return SplitSearchResult(p_star, residuals, threshold, member_mask)
