"""Domain types: intervals, series, datasets, and their validation."""
import numpy as np
import pytest

from tsforest import (
    Dataset,
    FeatureKind,
    Interval,
    TimeSeries,
    validate_dataset,
)
from tsforest.base import as_series_values
from tsforest.errors import InvalidLabel, LengthMismatch, NonFiniteValue


class TestFeatureKind:
    def test_three_kinds_with_stable_codes(self):
        assert int(FeatureKind.MEAN) == 1
        assert int(FeatureKind.STDDEV) == 2
        assert int(FeatureKind.SLOPE) == 3
        assert len(FeatureKind) == 3


class TestInterval:
    def test_valid_interval(self):
        iv = Interval(3, 7)
        assert iv.t1 == 3 and iv.t2 == 7
        assert iv.length == 5

    def test_single_point(self):
        assert Interval(4, 4).length == 1

    def test_rejects_start_before_one(self):
        with pytest.raises(ValueError):
            Interval(0, 5)
        with pytest.raises(ValueError):
            Interval(-2, 5)

    def test_rejects_end_before_start(self):
        with pytest.raises(ValueError):
            Interval(5, 4)

    def test_check_fits(self):
        Interval(1, 5).check_fits(5)
        Interval(5, 5).check_fits(5)
        with pytest.raises(LengthMismatch):
            Interval(1, 5).check_fits(4)
        with pytest.raises(LengthMismatch):
            Interval(6, 8).check_fits(5)

    def test_frozen(self):
        iv = Interval(1, 2)
        with pytest.raises(AttributeError):
            iv.t1 = 3


class TestTimeSeries:
    def test_copies_and_is_read_only(self):
        raw = np.array([1.0, 2.0, 3.0])
        ts = TimeSeries(raw)
        raw[0] = 99.0
        assert ts.values[0] == 1.0
        with pytest.raises(ValueError):
            ts.values[0] = 5.0

    def test_length(self):
        assert TimeSeries([1.0, 2.0]).length == 2

    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteValue):
            TimeSeries([1.0, np.nan])
        with pytest.raises(NonFiniteValue):
            TimeSeries([np.inf, 0.0])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            TimeSeries([])


class TestAsSeriesValues:
    def test_accepts_list_array_and_timeseries(self):
        for src in ([1.0, 2.0], np.array([1.0, 2.0]), TimeSeries([1.0, 2.0])):
            out = as_series_values(src)
            assert out.dtype == np.float64
            assert out.shape == (2,)

    def test_rejects_matrix(self):
        with pytest.raises(ValueError):
            as_series_values(np.zeros((2, 2)))


class TestDataset:
    def test_basic_construction(self):
        d = validate_dataset([[0.0, 1.0], [2.0, 3.0]], [1, 2])
        assert d.n_instances == 2
        assert d.series_length == 2
        assert d.num_classes == 2
        assert d.class_labels == (1, 2)
        assert d.labels.dtype == np.int64
        assert d.values.dtype == np.float64

    def test_instance_and_iteration(self):
        d = validate_dataset([[0.0, 1.0], [2.0, 3.0]], [1, 2])
        assert np.array_equal(d.instance(1), [2.0, 3.0])
        pairs = list(d)
        assert len(pairs) == 2
        assert pairs[0][1] == 1

    def test_original_labels_default_space(self):
        d = validate_dataset([[0.0], [1.0]], [1, 2])
        assert np.array_equal(d.original_labels(), [1, 2])

    def test_original_labels_remapped_space(self):
        d = Dataset(
            values=np.array([[0.0], [1.0], [2.0]]),
            labels=np.array([1, 2, 1]),
            num_classes=2,
            class_labels=(-1, 1),
        )
        assert np.array_equal(d.original_labels(), [-1, 1, -1])

    def test_ragged_instances_rejected(self):
        with pytest.raises(LengthMismatch):
            validate_dataset([[0.0, 1.0], [2.0]], [1, 2])

    def test_label_gap_rejected(self):
        with pytest.raises(InvalidLabel):
            validate_dataset([[0.0], [1.0], [2.0]], [1, 2, 4])

    def test_nonpositive_label_rejected(self):
        with pytest.raises(InvalidLabel):
            validate_dataset([[0.0], [1.0]], [0, 1])
        with pytest.raises(InvalidLabel):
            validate_dataset([[0.0], [1.0]], [-1, 1])

    def test_missing_class_rejected(self):
        with pytest.raises(InvalidLabel):
            validate_dataset([[0.0], [1.0]], [2, 2])

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteValue):
            validate_dataset([[0.0], [np.nan]], [1, 2])

    def test_class_labels_size_checked(self):
        with pytest.raises(InvalidLabel):
            Dataset(
                values=np.zeros((2, 3)),
                labels=np.array([1, 2]),
                num_classes=2,
                class_labels=(1,),
            )

    def test_single_class_dataset_allowed(self):
        d = validate_dataset([[0.0, 1.0]], [1])
        assert d.num_classes == 1
