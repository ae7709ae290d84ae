"""Core containers: time series, labeled datasets, intervals, feature kinds.

Time indices are 1-based throughout the package and intervals are closed on
both ends, so the interval ``(t1, t2)`` covers ``t2 - t1 + 1`` observations.
Class labels are contiguous integers ``1..C``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidLabel, LengthMismatch, NonFiniteValue

__all__ = [
    "FeatureKind",
    "Interval",
    "TimeSeries",
    "Dataset",
    "validate_dataset",
]


class FeatureKind(IntEnum):
    """The three summary statistics computed over an interval of a series."""

    MEAN = 1
    STDDEV = 2
    SLOPE = 3


@dataclass(frozen=True)
class Interval:
    """Closed 1-based index range ``[t1, t2]`` of a series.

    Construction rejects ``t1 < 1`` and ``t2 < t1``. Whether ``t2`` fits a
    particular series is only known where the interval is applied; use
    :meth:`check_fits` there.
    """

    t1: int
    t2: int

    def __post_init__(self) -> None:
        t1 = int(self.t1)
        t2 = int(self.t2)
        if t1 < 1:
            raise ValueError(f"interval start must be >= 1, got {t1}")
        if t2 < t1:
            raise ValueError(f"interval end {t2} precedes start {t1}")
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "t2", t2)

    @property
    def length(self) -> int:
        return self.t2 - self.t1 + 1

    def check_fits(self, series_length: int) -> None:
        if self.t2 > series_length:
            raise LengthMismatch(
                f"interval ({self.t1}, {self.t2}) exceeds series length {series_length}"
            )


@dataclass(frozen=True)
class TimeSeries:
    """A single fixed-length series of float64 observations.

    Values are copied into a read-only array. NaN and infinity are rejected.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 1:
            raise ValueError(f"series must be 1-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("series must contain at least one observation")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue("series contains NaN or infinite values")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def length(self) -> int:
        return len(self)


def as_series_values(series) -> np.ndarray:
    """Return the float64 value array behind a TimeSeries or array-like."""
    if isinstance(series, TimeSeries):
        return series.values
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"series must be 1-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("series must contain at least one observation")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("series contains NaN or infinite values")
    return arr


@dataclass(frozen=True)
class Dataset:
    """A labeled collection of equal-length series.

    values
        float64 matrix of shape (N, M), one series per row.
    labels
        int64 vector of length N with classes 1..num_classes, every class
        present at least once.
    num_classes
        C, the number of distinct classes.
    class_labels
        The original label of each class, indexed by class - 1. Equals
        ``(1, .., C)`` unless the dataset was loaded from a file whose labels
        were remapped; kept so predictions can be reported in the caller's
        label space.
    """

    values: np.ndarray
    labels: np.ndarray
    num_classes: int
    class_labels: tuple[int, ...]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError(f"values must be a 2-d matrix, got shape {values.shape}")
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError("dataset must contain at least one series and one time step")
        if labels.shape != (values.shape[0],):
            raise ValueError(
                f"labels shape {labels.shape} does not match {values.shape[0]} instances"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("dataset contains NaN or infinite values")
        c = int(self.num_classes)
        if c < 1:
            raise InvalidLabel(f"num_classes must be >= 1, got {c}")
        if labels.min() < 1 or labels.max() > c:
            raise InvalidLabel(
                f"labels must lie in 1..{c}, got range [{labels.min()}, {labels.max()}]"
            )
        if len(self.class_labels) != c:
            raise InvalidLabel(
                f"class_labels has {len(self.class_labels)} entries for {c} classes"
            )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "num_classes", c)
        object.__setattr__(self, "class_labels", tuple(int(x) for x in self.class_labels))

    @property
    def n_instances(self) -> int:
        return int(self.values.shape[0])

    @property
    def series_length(self) -> int:
        return int(self.values.shape[1])

    def instance(self, i: int) -> np.ndarray:
        return self.values[i]

    def original_labels(self) -> np.ndarray:
        """Labels of every instance mapped back to the caller's label space."""
        table = np.asarray(self.class_labels, dtype=np.int64)
        return table[self.labels - 1]

    def __iter__(self) -> Iterator[tuple[np.ndarray, int]]:
        for i in range(self.n_instances):
            yield self.values[i], int(self.labels[i])


def validate_dataset(instances: Sequence, labels: Sequence[int]) -> Dataset:
    """Validate raw instances and labels and assemble a Dataset.

    Expects already-contiguous labels: integers 1..C with every class present.
    Use :func:`tsforest.datasets.load_ucr` for files with arbitrary label
    alphabets; it remaps before calling this.

    Raises
    ------
    LengthMismatch
        if the instances do not all share one length.
    InvalidLabel
        if a label is non-integer, < 1, or a class in 1..max(labels) is absent.
    NonFiniteValue
        if any observation is NaN or infinite.
    """
    if len(instances) == 0:
        raise ValueError("no instances given")
    if len(instances) != len(labels):
        raise ValueError(
            f"{len(instances)} instances but {len(labels)} labels"
        )
    rows = [as_series_values(s) for s in instances]
    m = rows[0].shape[0]
    for i, row in enumerate(rows):
        if row.shape[0] != m:
            raise LengthMismatch(
                f"instance {i} has length {row.shape[0]}, expected {m}"
            )
    lab = []
    for i, raw in enumerate(labels):
        value = raw
        if isinstance(value, float) and not value.is_integer():
            raise InvalidLabel(f"label {value!r} of instance {i} is not an integer")
        value = int(value)
        if value < 1:
            raise InvalidLabel(f"label {value} of instance {i} must be >= 1")
        lab.append(value)
    c = max(lab)
    present = set(lab)
    missing = [k for k in range(1, c + 1) if k not in present]
    if missing:
        raise InvalidLabel(
            f"labels must cover 1..{c} with no gaps; missing {missing}"
        )
    return Dataset(
        values=np.vstack(rows),
        labels=np.asarray(lab, dtype=np.int64),
        num_classes=c,
        class_labels=tuple(range(1, c + 1)),
    )
