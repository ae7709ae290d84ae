"""Nearest-neighbor baselines: Euclidean, full DTW, and a learned band.

The warping band is a percentage r of the series length; r=0 collapses DTW
to the squared Euclidean distance and r=100 allows unrestricted warping.
Widening the band can only lower the alignment cost. The window search picks
r by leave-one-out error on the training set, smallest r on ties.
"""
import numpy as np

from tsforest import (
    WarpingWindow,
    best_warping_window,
    dtw_distance,
    euclidean_distance,
    generate_shifted_dataset,
    nn_error_rate,
    scaled_spec,
)

rng = np.random.default_rng(0)
t = np.linspace(0, 2 * np.pi, 60)
a = np.sin(t)
b = np.sin(t - 0.6)  # same shape, shifted in phase

print("two sine waves, one lagging the other:")
print(f"  Euclidean:    {euclidean_distance(a, b):8.4f}")
for r in (0, 5, 10, 25, 100):
    d = dtw_distance(a, b, WarpingWindow(r))
    print(f"  dtw, r={r:3d}:   {d:8.4f}")
print("a narrow band already absorbs the lag; wider never hurts")

# dtw accumulates squared point costs, so r=0 recovers euclidean squared
costs = [dtw_distance(a, b, WarpingWindow(r)) for r in range(101)]
assert all(x >= y for x, y in zip(costs, costs[1:]))
assert abs(costs[0] - euclidean_distance(a, b) ** 2) < 1e-9
print("checked: cost is non-increasing in r; dtw(r=0) == euclidean squared")

# 1-NN comparison on held-out synthetic data
train = generate_shifted_dataset(scaled_spec(128, per_class=30, seed=1))
test = generate_shifted_dataset(scaled_spec(128, per_class=30, seed=2))

window = best_warping_window(train)
print(f"\nlearned warping window: r={window.r} "
      f"(band width {window.width(train.series_length)} points)")
print(f"1-NN euclidean test error: "
      f"{nn_error_rate(train, test, metric='euclidean'):.4f}")
print(f"1-NN dtw (full) test error: "
      f"{nn_error_rate(train, test, metric='dtw'):.4f}")
print(f"1-NN dtw (learned r) test error: "
      f"{nn_error_rate(train, test, metric='dtw', window=window):.4f}")
