"""Interval features: mean, sample standard deviation, least-squares slope."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from tsforest import (
    FeatureKind,
    Interval,
    compute_feature,
    compute_mean,
    compute_slope,
    compute_std,
)
from tsforest.errors import LengthMismatch
from tsforest.features import prefix_sums


def _window(draw_len=st.integers(2, 24)):
    """Strategy: (series, interval) with the interval inside the series."""
    return draw_len.flatmap(
        lambda m: st.tuples(
            hnp.arrays(
                np.float64,
                m,
                elements=st.floats(-100.0, 100.0, allow_nan=False, width=64),
            ),
            st.integers(1, m),
        ).flatmap(
            lambda xm: st.tuples(
                st.just(xm[0]),
                st.integers(xm[1], m).map(lambda t2: Interval(xm[1], t2)),
            )
        )
    )


class TestMean:
    def test_simple_value(self):
        assert compute_mean([1.0, 2.0, 3.0], Interval(1, 3)) == pytest.approx(2.0)

    def test_constant_series(self):
        x = np.full(10, 3.0)
        for iv in (Interval(1, 10), Interval(4, 7), Interval(2, 2)):
            assert compute_mean(x, iv) == pytest.approx(3.0)

    def test_subinterval(self):
        assert compute_mean([5.0, 1.0, 3.0, 9.0], Interval(2, 3)) == pytest.approx(2.0)

    def test_matches_numpy(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=40)
        for t1, t2 in ((1, 40), (3, 17), (20, 20)):
            got = compute_mean(x, Interval(t1, t2))
            assert got == pytest.approx(np.mean(x[t1 - 1 : t2]), abs=1e-9)


class TestStd:
    def test_single_point_is_zero(self):
        assert compute_std([4.0, 5.0], Interval(2, 2)) == 0.0

    def test_constant_is_zero(self):
        assert compute_std(np.full(6, 2.5), Interval(1, 6)) == pytest.approx(0.0, abs=1e-12)

    def test_two_points(self):
        assert compute_std([1.0, 3.0], Interval(1, 2)) == pytest.approx(math.sqrt(2.0))

    def test_matches_numpy_ddof_one(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=30) * 5
        for t1, t2 in ((1, 30), (5, 9), (10, 25)):
            got = compute_std(x, Interval(t1, t2))
            assert got == pytest.approx(np.std(x[t1 - 1 : t2], ddof=1), abs=1e-9)

    def test_never_negative(self):
        # near-constant window where rounding could push the variance under zero
        x = np.full(8, 1e8) + np.array([0.0, 1e-8] * 4)
        assert compute_std(x, Interval(1, 8)) >= 0.0


class TestSlope:
    def test_single_point_is_zero(self):
        assert compute_slope([7.0, 1.0], Interval(1, 1)) == 0.0

    def test_hand_value(self):
        assert compute_slope([1.0, 3.0, 2.0], Interval(1, 3)) == pytest.approx(0.5)

    def test_exact_line(self):
        t = np.arange(1, 13, dtype=np.float64)
        x = 2.5 * t - 4.0
        assert compute_slope(x, Interval(1, 12)) == pytest.approx(2.5, abs=1e-12)
        assert compute_slope(x, Interval(3, 9)) == pytest.approx(2.5, abs=1e-12)

    def test_reversal_negates(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=15)
        a = compute_slope(x, Interval(1, 15))
        b = compute_slope(x[::-1].copy(), Interval(1, 15))
        assert a == pytest.approx(-b, abs=1e-12)

    def test_matches_least_squares(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            m = int(rng.integers(2, 30))
            x = rng.normal(size=m) * rng.uniform(0.1, 100)
            t1 = int(rng.integers(1, m + 1))
            t2 = int(rng.integers(t1, m + 1))
            if t2 == t1:
                continue
            w = x[t1 - 1 : t2]
            ts = np.arange(t1, t2 + 1, dtype=np.float64)
            design = np.vstack([ts, np.ones_like(ts)]).T
            beta, *_ = np.linalg.lstsq(design, w, rcond=None)
            got = compute_slope(x, Interval(t1, t2))
            assert got == pytest.approx(beta[0], abs=1e-9)


class TestEquivariance:
    # Mean and slope are linear in the data, so a 1e-9 relative band holds.
    # One-pass variance loses half the mantissa when a large offset rides on
    # a near-constant window, so std gets a wide absolute band; a real
    # defect (wrong ddof, wrong window) shows up at the scale itself.

    @given(_window(), st.floats(-100.0, 100.0, allow_nan=False))
    def test_shift(self, wi, c):
        x, iv = wi
        scale = max(1.0, np.abs(x).max(), abs(c))
        assert compute_mean(x + c, iv) == pytest.approx(
            compute_mean(x, iv) + c, abs=1e-9 * scale
        )
        assert compute_std(x + c, iv) == pytest.approx(
            compute_std(x, iv), abs=1e-6 * scale
        )
        assert compute_slope(x + c, iv) == pytest.approx(
            compute_slope(x, iv), abs=1e-8 * scale
        )

    @given(_window(), st.floats(-100.0, 100.0, allow_nan=False))
    def test_scale(self, wi, a):
        x, iv = wi
        scale = max(1.0, np.abs(x).max()) * max(1.0, abs(a))
        assert compute_mean(a * x, iv) == pytest.approx(
            a * compute_mean(x, iv), abs=1e-9 * scale
        )
        assert compute_std(a * x, iv) == pytest.approx(
            abs(a) * compute_std(x, iv), abs=1e-6 * scale
        )
        assert compute_slope(a * x, iv) == pytest.approx(
            a * compute_slope(x, iv), abs=1e-8 * scale
        )


class TestComputeFeature:
    def test_dispatch(self):
        x = np.array([1.0, 3.0, 2.0, 8.0])
        iv = Interval(1, 3)
        assert compute_feature(FeatureKind.MEAN, x, iv) == compute_mean(x, iv)
        assert compute_feature(FeatureKind.STDDEV, x, iv) == compute_std(x, iv)
        assert compute_feature(FeatureKind.SLOPE, x, iv) == compute_slope(x, iv)

    def test_interval_must_fit(self):
        with pytest.raises(LengthMismatch):
            compute_mean([1.0, 2.0], Interval(1, 3))
        with pytest.raises(LengthMismatch):
            compute_feature(FeatureKind.SLOPE, [1.0, 2.0], Interval(3, 3))


class TestPrefixSums:
    def test_tables_are_cumulative(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=(3, 12))
        pv, pv2, ptv = prefix_sums(x)
        assert pv.shape == (3, 13)
        t = np.arange(1, 13, dtype=np.float64)
        for j in range(3):
            assert pv[j, 0] == 0.0
            np.testing.assert_allclose(np.diff(pv[j]), x[j], atol=1e-12)
            np.testing.assert_allclose(np.diff(pv2[j]), x[j] ** 2, atol=1e-12)
            np.testing.assert_allclose(np.diff(ptv[j]), t * x[j], atol=1e-12)
