"""Walk through the three interval summaries on a hand-sized series.

Every split in a forest is a threshold on one of these numbers: the mean,
the sample standard deviation, or the least-squares slope of one contiguous
window. This script computes them directly, checks them against numpy, and
shows the prefix-sum tables that make each evaluation O(1).
"""
import numpy as np

from tsforest import Interval, compute_mean, compute_slope, compute_std
from tsforest.features import prefix_sums

x = np.array([2.0, 4.0, 3.0, 7.0, 6.0, 5.0, 9.0, 8.0])
m = x.size

print("series:", x)
print()
print(f"{'interval':>10} {'mean':>8} {'stddev':>8} {'slope':>8}")
for t1, t2 in [(1, 8), (1, 4), (3, 6), (5, 8), (4, 4)]:
    iv = Interval(t1, t2)
    print(f"  [{t1}, {t2}]  {compute_mean(x, iv):8.4f}"
          f" {compute_std(x, iv):8.4f} {compute_slope(x, iv):8.4f}")

# single-point windows have no spread and no direction, by convention
assert compute_std(x, Interval(4, 4)) == 0.0
assert compute_slope(x, Interval(4, 4)) == 0.0

# numpy agrees on a window in the middle
iv = Interval(3, 6)
w = x[2:6]
assert abs(compute_mean(x, iv) - w.mean()) < 1e-12
assert abs(compute_std(x, iv) - w.std(ddof=1)) < 1e-12
ts = np.arange(3, 7, dtype=float)
beta = np.linalg.lstsq(np.vstack([ts, np.ones(4)]).T, w, rcond=None)[0][0]
assert abs(compute_slope(x, iv) - beta) < 1e-12
print()
print("numpy cross-checks pass (mean, std ddof=1, lstsq slope)")

# the tables behind the O(1) evaluation: cumulative x, x^2, and t*x
pv, pv2, ptv = prefix_sums(x.reshape(1, -1))
print()
print("prefix sums for the series (leading zero entry, then cumulative):")
print("  sum x  :", pv[0])
print("  sum x^2:", pv2[0])
print("  sum t*x:", ptv[0])
s = pv[0][6] - pv[0][2]
print(f"window sum over [3, 6] from the table: {s} == {w.sum()}")
