"""Measure how training time grows with series length and with instances.

Per-node work is dominated by evaluating O(M) sampled intervals on each of
the N instances reaching the node, with O(1) per feature thanks to prefix
sums, so doubling either M or N should roughly double the fit time.
"""
import time

from tsforest import ForestConfig, fit, generate_shifted_dataset, scaled_spec


def median_seconds(data, runs=3):
    config = ForestConfig(n_trees=25, master_seed=0)
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fit(data, config)
        times.append(time.perf_counter() - t0)
    return sorted(times)[runs // 2]


# pay the one-time jit compilation before timing anything
fit(generate_shifted_dataset(scaled_spec(64, per_class=8, seed=0)),
    ForestConfig(n_trees=2))

print("series length doubling, 100 instances:")
by_m = {}
for m in (256, 512, 1024):
    data = generate_shifted_dataset(scaled_spec(m, per_class=50, seed=0))
    by_m[m] = median_seconds(data)
    print(f"  M={m:5d}: {by_m[m]:7.3f} s")
print(f"  ratios: {by_m[512] / by_m[256]:.2f}, {by_m[1024] / by_m[512]:.2f}")

print("\ninstance count doubling, length 256:")
by_n = {}
for per_class in (50, 100, 200):
    data = generate_shifted_dataset(scaled_spec(256, per_class=per_class, seed=0))
    by_n[2 * per_class] = median_seconds(data)
    print(f"  N={2 * per_class:5d}: {by_n[2 * per_class]:7.3f} s")
print(f"  ratios: {by_n[200] / by_n[100]:.2f}, {by_n[400] / by_n[200]:.2f}")
