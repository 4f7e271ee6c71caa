"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written along a different code path than
the package internals: plain-Python arithmetic, full distance matrices,
pair enumeration, exhaustive matchings.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, permutations

import numpy as np

from sagdbscan.density import DensityProfile


def scalar_grey_degree(a, b) -> float:
    """Pure-Python evaluation of the B-style degree."""
    n = len(a)
    gap = [float(x) - float(y) for x, y in zip(a, b)]
    denom = 1.0 + sum(abs(v) for v in gap) / n
    if n >= 2:
        denom += sum(abs(gap[i + 1] - gap[i]) for i in range(n - 1)) / (n - 1)
    if n >= 3:
        denom += sum(abs(gap[i + 1] - 2.0 * gap[i] + gap[i - 1])
                     for i in range(1, n - 1)) / (n - 2)
    return 1.0 / denom


def naive_dbscan(data: np.ndarray, eps: float, min_pts: int) -> np.ndarray:
    """Textbook DBSCAN with a full distance matrix and seed-list expansion.

    Same semantics as the library: neighbors exclude the point itself,
    the radius test is <= eps, points are visited by ascending index.
    Returns labels with -1 for noise.
    """
    n = len(data)
    diff = data[:, None, :] - data[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    UNCLASSIFIED, NOISE = -2, -1

    def region(i):
        row = dist[i].copy()
        row[i] = np.inf
        return np.flatnonzero(row <= eps).tolist()

    labels = np.full(n, UNCLASSIFIED, dtype=np.int64)
    cid = 0
    for i in range(n):
        if labels[i] != UNCLASSIFIED:
            continue
        neighborhood = region(i)
        if len(neighborhood) < min_pts:
            labels[i] = NOISE
            continue
        labels[i] = cid
        seeds = list(neighborhood)
        for j in seeds:
            if labels[j] in (UNCLASSIFIED, NOISE):
                labels[j] = cid
        pos = 0
        while pos < len(seeds):
            j = seeds[pos]
            pos += 1
            expansion = region(j)
            if len(expansion) < min_pts:
                continue
            for t in expansion:
                if labels[t] == UNCLASSIFIED:
                    labels[t] = cid
                    seeds.append(t)
                elif labels[t] == NOISE:
                    labels[t] = cid
        cid += 1
    return labels


def eps_graph_components(data: np.ndarray, eps: float) -> np.ndarray:
    """Connected components of the <= eps neighborhood graph, ids by first index."""
    n = len(data)
    diff = data[:, None, :] - data[None, :, :]
    adjacency = np.sqrt((diff * diff).sum(axis=-1)) <= eps
    labels = np.full(n, -1, dtype=np.int64)
    cid = 0
    for i in range(n):
        if labels[i] != -1:
            continue
        stack = [i]
        labels[i] = cid
        while stack:
            j = stack.pop()
            for t in np.flatnonzero(adjacency[j] & (labels == -1)):
                labels[t] = cid
                stack.append(int(t))
        cid += 1
    return labels


def brute_ari(a, b) -> float:
    """Adjusted Rand index by explicit enumeration of all object pairs."""
    a = list(a)
    b = list(b)
    n11 = n10 = n01 = 0
    total = 0
    for i, j in combinations(range(len(a)), 2):
        total += 1
        same_a = a[i] == a[j]
        same_b = b[i] == b[j]
        if same_a and same_b:
            n11 += 1
        elif same_a:
            n10 += 1
        elif same_b:
            n01 += 1
    sum_a = n11 + n10
    sum_b = n11 + n01
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2.0
    if maximum == expected:
        return 1.0
    return (n11 - expected) / (maximum - expected)


def brute_nmi(a, b) -> float:
    """NMI with sqrt normalization from direct entropy sums."""
    n = len(a)
    ca, cb, cab = Counter(a), Counter(b), Counter(zip(a, b))
    h_a = -sum(c / n * math.log(c / n) for c in ca.values())
    h_b = -sum(c / n * math.log(c / n) for c in cb.values())
    if h_a == 0.0 and h_b == 0.0:
        return 1.0
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    mi = sum(c / n * math.log((c / n) / ((ca[x] / n) * (cb[y] / n)))
             for (x, y), c in cab.items())
    return mi / math.sqrt(h_a * h_b)


def brute_accuracy(pred, truth) -> float:
    """Best one-to-one matching accuracy by exhausting all injections."""
    pred = list(pred)
    truth = list(truth)
    ps = sorted(set(pred))
    ts = sorted(set(truth))
    best = 0
    if len(ps) <= len(ts):
        for image in permutations(ts, len(ps)):
            mapping = dict(zip(ps, image))
            best = max(best, sum(1 for p, t in zip(pred, truth) if mapping[p] == t))
    else:
        for chosen in permutations(ps, len(ts)):
            mapping = dict(zip(chosen, ts))
            best = max(best, sum(1 for p, t in zip(pred, truth) if mapping.get(p) == t))
    return best / len(pred)


def knee_profile(rng: np.random.Generator, n: int | None = None,
                 q: int | None = None) -> tuple[DensityProfile, int]:
    """Build a density profile whose smoothed curve is exactly two lines.

    The curve follows one straight line on smoothed ranks [5, q] and a
    steeper one on (q, n], with a small downward jump at the knee so the
    two-line residual is zero only when the split sits exactly at q.  (With
    a continuous knee the vertex lies on both lines, the residual is zero
    at q-1 as well, and the tie rule would pick q-1.)  The sorted densities
    are recovered by inverting the 5-term mean from a linear head; the jump
    must stay below a fifth of the left slope or the recovered sequence
    stops being monotone, so draws that break monotonicity are rejected.
    """
    n = int(n if n is not None else rng.integers(30, 141))
    q = int(q if q is not None else rng.integers(10, n - 4))
    for _ in range(200):
        s_left = float(rng.uniform(0.05, 0.3))
        s_right = s_left * float(rng.uniform(2.0, 5.0))
        jump = s_left * float(rng.uniform(0.05, 0.18))

        m = n - 4
        t_knee = q - 5  # 0-based curve position of the knee rank
        t = np.arange(m, dtype=np.float64)
        v = np.empty(m)
        v[:t_knee + 1] = -s_left * t[:t_knee + 1]
        v[t_knee + 1:] = v[t_knee] - s_left - jump - s_right * (t[t_knee + 1:] - t_knee - 1)

        rho = np.empty(n)
        rho[:5] = v[0] + s_left * (2.0 - np.arange(5))  # linear, window mean = v[0]
        dv = np.diff(v)
        for i in range(n - 5):
            rho[i + 5] = rho[i] + 5.0 * dv[i]
        rho += 1.0 - rho.min()  # shift positive; smoothing is linear so v keeps its shape
        if np.any(np.diff(rho) > 0.0):
            continue
        k = int(np.ceil(rho.max()))
        profile = DensityProfile(rho, np.arange(n), k)
        return profile, q
    raise AssertionError("could not draw a monotone knee profile")
