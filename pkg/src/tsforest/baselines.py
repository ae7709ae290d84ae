"""Nearest-neighbor baselines: Euclidean and dynamic time warping.

DTW here is the classic squared-cost recurrence over equal-length series,
constrained to a diagonal band. The band is stated as a percentage r of the
series length and converted to an absolute width ceil(r * M / 100): r = 0
admits only the diagonal (the squared Euclidean distance), r = 100 admits
every cell. Distances are left as sums of squared differences; square roots
are monotone and never taken, so nearest-neighbor decisions are unaffected.

All neighbor searches break distance ties toward the lowest training index.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .base import Dataset, as_series_values
from .errors import LengthMismatch

__all__ = [
    "WarpingWindow",
    "NO_WINDOW",
    "euclidean_distance",
    "dtw_distance",
    "nn_classify",
    "nn_error_rate",
    "best_warping_window",
]


@dataclass(frozen=True)
class WarpingWindow:
    """Sakoe-Chiba band as a percentage of the series length, 0..100."""

    r: int

    def __post_init__(self) -> None:
        r = int(self.r)
        if r < 0 or r > 100:
            raise ValueError(f"warping window must be in 0..100 percent, got {r}")
        object.__setattr__(self, "r", r)

    def width(self, series_length: int) -> int:
        """Absolute band half-width: ceil(r * M / 100)."""
        return -((-self.r * int(series_length)) // 100)


NO_WINDOW = WarpingWindow(100)


@njit(cache=True, nogil=True)
def _dtw_band(a, b, width):
    # rolling-rows squared-cost DTW inside |i - j| <= width
    m = a.shape[0]
    prev = np.full(m + 1, np.inf)
    cur = np.full(m + 1, np.inf)
    prev[0] = 0.0
    for i in range(1, m + 1):
        jlo = i - width
        if jlo < 1:
            jlo = 1
        jhi = i + width
        if jhi > m:
            jhi = m
        cur[jlo - 1] = np.inf
        for j in range(jlo, jhi + 1):
            d = a[i - 1] - b[j - 1]
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            cur[j] = d * d + best
        if jhi + 1 <= m:
            cur[jhi + 1] = np.inf
        tmp = prev
        prev = cur
        cur = tmp
    return prev[m]


@njit(cache=True, nogil=True)
def _dtw_cross(test, train, width, out):
    for i in range(test.shape[0]):
        for j in range(train.shape[0]):
            out[i, j] = _dtw_band(test[i], train[j], width)


@njit(cache=True, nogil=True)
def _dtw_self(train, width, out):
    n = train.shape[0]
    for i in range(n):
        out[i, i] = 0.0
        for j in range(i + 1, n):
            d = _dtw_band(train[i], train[j], width)
            out[i, j] = d
            out[j, i] = d


def euclidean_distance(a, b) -> float:
    """Plain Euclidean distance between two equal-length series."""
    va = as_series_values(a)
    vb = as_series_values(b)
    if va.shape[0] != vb.shape[0]:
        raise LengthMismatch(
            f"series lengths differ: {va.shape[0]} vs {vb.shape[0]}"
        )
    diff = va - vb
    return float(np.sqrt(np.dot(diff, diff)))


def dtw_distance(a, b, window: WarpingWindow = NO_WINDOW) -> float:
    """Banded DTW cost between two equal-length series.

    The accumulated cost of the best monotone alignment path from (1, 1) to
    (M, M) under squared pointwise cost, constrained to |i - j| <= width.
    Identical series cost 0; with r = 0 the result equals the squared
    Euclidean distance.
    """
    va = as_series_values(a)
    vb = as_series_values(b)
    if va.shape[0] != vb.shape[0]:
        raise LengthMismatch(
            f"series lengths differ: {va.shape[0]} vs {vb.shape[0]}"
        )
    return float(_dtw_band(va, vb, window.width(va.shape[0])))


def _check_same_length(train: Dataset, length: int) -> None:
    if train.series_length != length:
        raise LengthMismatch(
            f"query length {length} does not match training length "
            f"{train.series_length}"
        )


def _sq_euclidean_cross(test: np.ndarray, train: np.ndarray) -> np.ndarray:
    out = np.empty((test.shape[0], train.shape[0]), dtype=np.float64)
    # chunk the broadcast so memory stays bounded on big test sets
    step = max(1, int(4e7) // (train.shape[0] * train.shape[1] + 1))
    for s in range(0, test.shape[0], step):
        e = min(test.shape[0], s + step)
        diff = test[s:e, None, :] - train[None, :, :]
        out[s:e] = np.einsum("ijk,ijk->ij", diff, diff)
    return out


def _nn_from_distances(dist: np.ndarray) -> np.ndarray:
    # argmin returns the first minimum, which is the lowest training index
    return np.argmin(dist, axis=1)


def nn_classify(train: Dataset, series, *, metric: str = "euclidean",
                window: WarpingWindow = NO_WINDOW) -> int:
    """1-nearest-neighbor label (in the training dataset's class space)."""
    values = as_series_values(series)
    _check_same_length(train, values.shape[0])
    if metric == "euclidean":
        dist = _sq_euclidean_cross(values.reshape(1, -1), train.values)
    elif metric == "dtw":
        dist = np.empty((1, train.n_instances))
        _dtw_cross(values.reshape(1, -1), train.values, window.width(values.shape[0]), dist)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return int(train.labels[_nn_from_distances(dist)[0]])


def nn_error_rate(train: Dataset, test: Dataset, *, metric: str = "euclidean",
                  window: WarpingWindow = NO_WINDOW) -> float:
    """Misclassification rate of 1-NN from train onto test.

    Labels are compared in the original label space of each dataset, so the
    two sides may have been remapped independently.
    """
    if train.series_length != test.series_length:
        raise LengthMismatch(
            f"train length {train.series_length} vs test length {test.series_length}"
        )
    if metric == "euclidean":
        dist = _sq_euclidean_cross(test.values, train.values)
    elif metric == "dtw":
        dist = np.empty((test.n_instances, train.n_instances))
        _dtw_cross(test.values, train.values, window.width(train.series_length), dist)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    nearest = _nn_from_distances(dist)
    predicted = train.original_labels()[nearest]
    return float(np.mean(predicted != test.original_labels()))


def best_warping_window(train: Dataset) -> WarpingWindow:
    """Leave-one-out cross-validated band percentage, smallest r on ties.

    Evaluates every r in 0..100. Distinct r values often map to one absolute
    width; the LOOCV error is computed per distinct width and shared, which
    changes nothing about the result. Each held-out instance takes the label
    of its nearest other instance, lowest index on ties.
    """
    n = train.n_instances
    if n < 2:
        raise ValueError("leave-one-out needs at least two instances")
    m = train.series_length
    labels = train.labels
    errors_by_width: dict[int, float] = {}
    best_r = 0
    best_err = np.inf
    for r in range(0, 101):
        w = WarpingWindow(r).width(m)
        if w not in errors_by_width:
            dist = np.empty((n, n))
            _dtw_self(train.values, w, dist)
            np.fill_diagonal(dist, np.inf)
            nearest = _nn_from_distances(dist)
            errors_by_width[w] = float(np.mean(labels[nearest] != labels))
        err = errors_by_width[w]
        if err < best_err:
            best_err = err
            best_r = r
    return WarpingWindow(best_r)
