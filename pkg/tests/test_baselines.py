"""Nearest-neighbor comparators: Euclidean and banded DTW."""
import numpy as np
import pytest

from tsforest import (
    NO_WINDOW,
    Dataset,
    WarpingWindow,
    best_warping_window,
    dtw_distance,
    euclidean_distance,
    nn_classify,
    nn_error_rate,
    validate_dataset,
)
from tsforest.errors import LengthMismatch


def dtw_oracle(a, b, width):
    """Full O(M^2) dynamic-programming table, written independently."""
    m = len(a)
    table = np.full((m + 1, m + 1), np.inf)
    table[0, 0] = 0.0
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if abs(i - j) > width:
                continue
            cost = (a[i - 1] - b[j - 1]) ** 2
            table[i, j] = cost + min(
                table[i - 1, j - 1], table[i - 1, j], table[i, j - 1]
            )
    return table[m, m]


class TestWarpingWindow:
    def test_width_is_ceiling_of_percentage(self):
        assert WarpingWindow(0).width(150) == 0
        assert WarpingWindow(1).width(150) == 2
        assert WarpingWindow(10).width(150) == 15
        assert WarpingWindow(100).width(150) == 150
        assert WarpingWindow(3).width(100) == 3
        assert WarpingWindow(7).width(33) == 3

    def test_bounds_checked(self):
        with pytest.raises(ValueError):
            WarpingWindow(-1)
        with pytest.raises(ValueError):
            WarpingWindow(101)

    def test_no_window_constant(self):
        assert NO_WINDOW.r == 100


class TestEuclideanDistance:
    def test_zero_on_self(self):
        x = np.random.default_rng(0).normal(size=12)
        assert euclidean_distance(x, x) == 0.0

    def test_three_four_five(self):
        assert euclidean_distance([0.0, 0.0], [3.0, 4.0]) == pytest.approx(5.0)

    def test_symmetric(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            a, b = rng.normal(size=(2, 9))
            assert euclidean_distance(a, b) == euclidean_distance(b, a)

    def test_length_checked(self):
        with pytest.raises(LengthMismatch):
            euclidean_distance([1.0], [1.0, 2.0])


class TestDtwDistance:
    def test_zero_on_self(self):
        x = np.random.default_rng(2).normal(size=15)
        for r in (0, 5, 100):
            assert dtw_distance(x, x, WarpingWindow(r)) == 0.0

    def test_alignment_absorbs_a_shift(self):
        # best path: (1,1) (2,2) (3,2) then (3,3); every matched pair equal
        assert dtw_distance([0.0, 0.0, 1.0], [0.0, 1.0, 1.0]) == 0.0

    def test_never_above_diagonal_cost(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            a, b = rng.normal(size=(2, 12))
            diag = float(np.sum((a - b) ** 2))
            assert dtw_distance(a, b) <= diag + 1e-12

    def test_symmetric_and_nonnegative(self):
        rng = np.random.default_rng(4)
        for _ in range(15):
            a, b = rng.normal(size=(2, 10))
            for r in (0, 20, 100):
                w = WarpingWindow(r)
                d = dtw_distance(a, b, w)
                assert d >= 0.0
                assert d == dtw_distance(b, a, w)

    def test_matches_full_table_oracle(self):
        rng = np.random.default_rng(5)
        for trial in range(30):
            m = int(rng.integers(2, 20))
            a, b = rng.normal(size=(2, m))
            for r in (0, 1, 10, 37, 100):
                w = WarpingWindow(r)
                want = dtw_oracle(a, b, w.width(m))
                assert dtw_distance(a, b, w) == pytest.approx(
                    want, rel=1e-12, abs=1e-12
                )

    def test_diagonal_band_is_squared_euclidean(self):
        rng = np.random.default_rng(6)
        a, b = rng.normal(size=(2, 14))
        assert dtw_distance(a, b, WarpingWindow(0)) == pytest.approx(
            float(np.sum((a - b) ** 2)), rel=1e-12
        )

    def test_widening_the_band_never_costs_more(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, b = rng.normal(size=(2, 25))
            costs = [
                dtw_distance(a, b, WarpingWindow(r)) for r in range(0, 101, 10)
            ]
            assert all(x >= y - 1e-12 for x, y in zip(costs, costs[1:]))

    def test_length_checked(self):
        with pytest.raises(LengthMismatch):
            dtw_distance([1.0, 2.0], [1.0, 2.0, 3.0])


def toy_train():
    values = [
        [0.0, 0.0, 0.0, 0.0],
        [0.1, 0.0, 0.1, 0.0],
        [5.0, 5.0, 5.0, 5.0],
        [5.1, 5.0, 4.9, 5.0],
    ]
    return validate_dataset(values, [1, 1, 2, 2])


class TestNnClassify:
    def test_single_instance_always_wins(self):
        train = validate_dataset([[1.0, 2.0]], [1])
        assert nn_classify(train, [99.0, -99.0]) == 1

    def test_nearest_cluster(self):
        train = toy_train()
        assert nn_classify(train, [0.2, 0.1, 0.0, 0.1]) == 1
        assert nn_classify(train, [4.8, 5.2, 5.0, 5.0]) == 2

    def test_distance_tie_takes_lowest_index(self):
        train = validate_dataset([[1.0, 1.0], [1.0, 1.0]], [2, 1])
        assert nn_classify(train, [1.0, 1.0]) == 2

    def test_euclidean_equals_diagonal_dtw_decisions(self):
        train = toy_train()
        rng = np.random.default_rng(8)
        for _ in range(25):
            q = rng.normal(2.5, 3.0, size=4)
            a = nn_classify(train, q, metric="euclidean")
            b = nn_classify(train, q, metric="dtw", window=WarpingWindow(0))
            assert a == b

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            nn_classify(toy_train(), [0.0] * 4, metric="cosine")

    def test_length_checked(self):
        with pytest.raises(LengthMismatch):
            nn_classify(toy_train(), [0.0] * 5)


class TestNnErrorRate:
    def test_zero_on_training_data(self):
        train = toy_train()
        assert nn_error_rate(train, train) == 0.0
        assert nn_error_rate(train, train, metric="dtw") == 0.0

    def test_half_wrong(self):
        train = toy_train()
        test = validate_dataset(
            [[0.0, 0.1, 0.0, 0.1], [0.2, 0.0, 0.1, 0.0]], [1, 2]
        )
        assert nn_error_rate(train, test) == 0.5

    def test_compares_original_label_spaces(self):
        train = Dataset(
            values=np.array([[0.0, 0.0], [9.0, 9.0]]),
            labels=np.array([1, 2]),
            num_classes=2,
            class_labels=(-1, 1),
        )
        test = Dataset(
            values=np.array([[0.1, 0.0], [8.9, 9.1]]),
            labels=np.array([1, 2]),
            num_classes=2,
            class_labels=(-1, 1),
        )
        assert nn_error_rate(train, test) == 0.0

    def test_length_checked(self):
        test = validate_dataset([[0.0] * 5, [1.0] * 5], [1, 2])
        with pytest.raises(LengthMismatch):
            nn_error_rate(toy_train(), test)


class TestBestWarpingWindow:
    def test_perfect_at_diagonal_returns_zero(self):
        got = best_warping_window(toy_train())
        assert got.r == 0

    def test_needs_two_instances(self):
        lone = validate_dataset([[1.0, 2.0]], [1])
        with pytest.raises(ValueError):
            best_warping_window(lone)

    def test_full_band_matches_no_window_error(self):
        rng = np.random.default_rng(9)
        values = rng.normal(size=(8, 10))
        labels = [1, 2] * 4
        train = validate_dataset(values, labels)
        n = train.n_instances
        # leave-one-out by hand with the library distance, full band
        errs = 0
        for i in range(n):
            dists = [
                dtw_distance(values[i], values[j]) if j != i else np.inf
                for j in range(n)
            ]
            errs += labels[int(np.argmin(dists))] != labels[i]
        want = errs / n
        got = best_warping_window(train)
        # the chosen window can only be at least as good as r=100
        dists_at = {}
        for r in (got.r, 100):
            w = WarpingWindow(r)
            e = 0
            for i in range(n):
                dd = [
                    dtw_distance(values[i], values[j], w) if j != i else np.inf
                    for j in range(n)
                ]
                e += labels[int(np.argmin(dd))] != labels[i]
            dists_at[r] = e / n
        assert dists_at[100] == pytest.approx(want)
        assert dists_at[got.r] <= dists_at[100]
