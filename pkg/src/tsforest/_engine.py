"""Compiled tree growth and prediction.

One call grows one whole tree. The kernel walks nodes in preorder with an
explicit stack, which pins down the order in which the generator is consumed:
interval sampling at each impure node, then one extra draw only when feature
kinds tie on gain. Node records are written to flat arrays; index 0 is the
root and children always carry higher indices than their parent.

The numeric primitives (window features, threshold grid, entropy gain) are
the same jitted functions the public API calls, so a tree grown here is
bit-identical to one grown by composing the public operations.

Flat layout per node:
    kind    0 leaf, else the feature kind code 1..3
    t1, t2  interval of a split node (0 for leaves)
    tau     split threshold
    gain    entropy gain of the split; for leaves, the best candidate gain
            seen at the node (0 unless the node stopped for lack of gain)
    left, right  child indices, -1 for leaves
    label   majority class 1..C, lowest class on count ties
    reason  why growth stopped: 0 split, 1 pure, 2 no positive gain,
            3 below minimum size, 4 depth cap
    counts  per-class instance counts at the node
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .features import _window_feature
from .sampling import _sample_interval_array
from .splitting import GAIN_TIE_TOL, _log_table, _split_gain, _threshold_grid

LEAF = 0
REASON_SPLIT = 0
REASON_PURE = 1
REASON_NO_GAIN = 2
REASON_MIN_SIZE = 3
REASON_DEPTH = 4


@njit(cache=True, nogil=True)
def _first_leq(tau_arr, kappa, v):
    # smallest threshold index whose value is >= v; kappa when none is
    lo = 0
    hi = kappa
    while lo < hi:
        mid = (lo + hi) >> 1
        if v <= tau_arr[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


@njit(cache=True, nogil=True)
def _grow(
    pv,
    pv2,
    ptv,
    y,
    idx,
    num_classes,
    kappa,
    min_node_size,
    max_depth,
    use_margin,
    rng,
    log_table,
    kind_o,
    t1_o,
    t2_o,
    tau_o,
    gain_o,
    left_o,
    right_o,
    label_o,
    reason_o,
    counts_o,
):
    n_total = idx.shape[0]
    m = pv.shape[1] - 1
    c_count = num_classes

    feats = np.empty(n_total, np.float64)
    tmp_left = np.empty(n_total, np.int64)
    tmp_right = np.empty(n_total, np.int64)
    order = np.empty(n_total, np.int64)
    bucket_of = np.empty(n_total, np.int64)
    sufmin = np.empty(n_total + 1, np.float64)
    tau_arr = np.empty(kappa, np.float64)
    bucket_tot = np.zeros(kappa + 1, np.int64)
    bucket_ptr = np.empty(kappa + 1, np.int64)
    parent_counts = np.empty(c_count, np.int64)
    left_counts = np.empty(c_count, np.int64)
    class_ids = np.empty(c_count, np.int64)

    best_gain = np.empty(4, np.float64)
    best_margin = np.empty(4, np.float64)
    best_t1 = np.empty(4, np.int64)
    best_t2 = np.empty(4, np.int64)
    best_tau = np.empty(4, np.float64)

    # stack columns: start, end, depth, parent slot, is-right-child
    stack = np.empty((2 * n_total + 4, 5), np.int64)
    top = 0
    stack[top, 0] = 0
    stack[top, 1] = n_total
    stack[top, 2] = 0
    stack[top, 3] = -1
    stack[top, 4] = 0
    top += 1

    n_nodes = 0
    while top > 0:
        top -= 1
        seg_start = stack[top, 0]
        seg_end = stack[top, 1]
        depth = stack[top, 2]
        parent = stack[top, 3]
        is_right = stack[top, 4]

        slot = n_nodes
        n_nodes += 1
        if parent >= 0:
            if is_right == 1:
                right_o[parent] = slot
            else:
                left_o[parent] = slot

        n = seg_end - seg_start
        for c in range(c_count):
            parent_counts[c] = 0
        for j in range(seg_start, seg_end):
            parent_counts[y[idx[j]]] += 1
        maj = 0
        for c in range(1, c_count):
            if parent_counts[c] > parent_counts[maj]:
                maj = c
        for c in range(c_count):
            counts_o[slot, c] = parent_counts[c]
        label_o[slot] = maj + 1
        left_o[slot] = -1
        right_o[slot] = -1
        t1_o[slot] = 0
        t2_o[slot] = 0
        tau_o[slot] = 0.0
        gain_o[slot] = 0.0
        kind_o[slot] = LEAF

        if parent_counts[maj] == n:
            reason_o[slot] = REASON_PURE
            continue
        if n < min_node_size:
            reason_o[slot] = REASON_MIN_SIZE
            continue
        if max_depth >= 0 and depth >= max_depth:
            reason_o[slot] = REASON_DEPTH
            continue

        n_present = 0
        for c in range(c_count):
            if parent_counts[c] > 0:
                class_ids[n_present] = c
                n_present += 1
        present = class_ids[:n_present]

        intervals = _sample_interval_array(rng, m)
        n_ivals = intervals.shape[0]

        for k in range(1, 4):
            best_gain[k] = 0.0
            best_margin[k] = -1.0
            best_t1[k] = -1
            best_t2[k] = -1
            best_tau[k] = 0.0
        gain_ceiling = 0.0  # best gain over all candidates, eligible or not

        for k in range(1, 4):
            for ii in range(n_ivals):
                t1 = intervals[ii, 0]
                t2 = intervals[ii, 1]
                lo = np.inf
                hi = -np.inf
                for j in range(n):
                    row = idx[seg_start + j]
                    v = _window_feature(k, pv[row], pv2[row], ptv[row], t1, t2)
                    feats[j] = v
                    if v < lo:
                        lo = v
                    if v > hi:
                        hi = v
                if not (lo < hi):
                    continue
                _threshold_grid(lo, hi, kappa, tau_arr)

                for j in range(n):
                    b = _first_leq(tau_arr, kappa, feats[j])
                    bucket_of[j] = b
                    bucket_tot[b] += 1
                acc = 0
                for b in range(kappa + 1):
                    bucket_ptr[b] = acc
                    acc += bucket_tot[b]
                for j in range(n):
                    b = bucket_of[j]
                    order[bucket_ptr[b]] = j
                    bucket_ptr[b] += 1
                sufmin[n] = np.inf
                for p in range(n - 1, -1, -1):
                    v = feats[order[p]]
                    below = sufmin[p + 1]
                    sufmin[p] = v if v < below else below

                for c in range(n_present):
                    left_counts[present[c]] = 0
                n_left = 0
                run_max = -np.inf
                ptr = 0
                i = 0
                while i < kappa:
                    cnt = bucket_tot[i]
                    for p in range(ptr, ptr + cnt):
                        j = order[p]
                        left_counts[y[idx[seg_start + j]]] += 1
                        v = feats[j]
                        if v > run_max:
                            run_max = v
                    ptr += cnt
                    n_left += cnt
                    # thresholds i..i_end-1 induce the same partition
                    i_end = i + 1
                    while i_end < kappa and bucket_tot[i_end] == 0:
                        i_end += 1
                    g = _split_gain(
                        parent_counts, left_counts, present, n, n_left, log_table
                    )
                    if g > gain_ceiling:
                        gain_ceiling = g
                    if g > GAIN_TIE_TOL:
                        if best_t1[k] < 0 or g > best_gain[k] + GAIN_TIE_TOL:
                            scan = True
                        elif g < best_gain[k] - GAIN_TIE_TOL:
                            scan = False
                        else:
                            # equal gain can only win through a larger margin
                            scan = use_margin
                        if scan:
                            if use_margin:
                                right_min = sufmin[ptr]
                                for t_i in range(i, i_end):
                                    tau = tau_arr[t_i]
                                    lm = tau - run_max
                                    rm = right_min - tau
                                    marg = lm if lm < rm else rm
                                    if best_t1[k] < 0 or g > best_gain[k] + GAIN_TIE_TOL:
                                        take = True
                                    elif (
                                        g >= best_gain[k] - GAIN_TIE_TOL
                                        and marg > best_margin[k]
                                    ):
                                        take = True
                                    else:
                                        take = False
                                    if take:
                                        best_gain[k] = g
                                        best_margin[k] = marg
                                        best_t1[k] = t1
                                        best_t2[k] = t2
                                        best_tau[k] = tau
                            else:
                                # without margins the first threshold of the
                                # run wins and the rest of the run cannot
                                best_gain[k] = g
                                best_margin[k] = 0.0
                                best_t1[k] = t1
                                best_t2[k] = t2
                                best_tau[k] = tau_arr[i]
                    i = i_end

                for j in range(n):
                    bucket_tot[bucket_of[j]] = 0

        n_avail = 0
        top_gain = 0.0
        for k in range(1, 4):
            if best_t1[k] >= 0:
                n_avail += 1
                if best_gain[k] > top_gain:
                    top_gain = best_gain[k]
        if n_avail == 0:
            reason_o[slot] = REASON_NO_GAIN
            gain_o[slot] = gain_ceiling
            continue

        n_tied = 0
        for k in range(1, 4):
            if best_t1[k] >= 0 and best_gain[k] >= top_gain - GAIN_TIE_TOL:
                n_tied += 1
        if n_tied > 1:
            pick = rng.integers(0, n_tied)
        else:
            pick = 0
        chosen = 0
        seen = 0
        for k in range(1, 4):
            if best_t1[k] >= 0 and best_gain[k] >= top_gain - GAIN_TIE_TOL:
                if seen == pick:
                    chosen = k
                    break
                seen += 1

        ck_t1 = best_t1[chosen]
        ck_t2 = best_t2[chosen]
        ck_tau = best_tau[chosen]
        nl = 0
        nr = 0
        for j in range(seg_start, seg_end):
            row = idx[j]
            v = _window_feature(chosen, pv[row], pv2[row], ptv[row], ck_t1, ck_t2)
            if v <= ck_tau:
                tmp_left[nl] = row
                nl += 1
            else:
                tmp_right[nr] = row
                nr += 1
        assert nl > 0 and nr > 0
        for a in range(nl):
            idx[seg_start + a] = tmp_left[a]
        for a in range(nr):
            idx[seg_start + nl + a] = tmp_right[a]

        kind_o[slot] = chosen
        t1_o[slot] = ck_t1
        t2_o[slot] = ck_t2
        tau_o[slot] = ck_tau
        gain_o[slot] = best_gain[chosen]
        reason_o[slot] = REASON_SPLIT

        stack[top, 0] = seg_start + nl
        stack[top, 1] = seg_end
        stack[top, 2] = depth + 1
        stack[top, 3] = slot
        stack[top, 4] = 1
        top += 1
        stack[top, 0] = seg_start
        stack[top, 1] = seg_start + nl
        stack[top, 2] = depth + 1
        stack[top, 3] = slot
        stack[top, 4] = 0
        top += 1

    return n_nodes


@njit(cache=True, nogil=True)
def _predict(kind, t1, t2, tau, left, right, label, pv, pv2, ptv, out):
    for i in range(pv.shape[0]):
        node = 0
        while kind[node] != LEAF:
            v = _window_feature(
                np.int64(kind[node]), pv[i], pv2[i], ptv[i], t1[node], t2[node]
            )
            if v <= tau[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = label[node]


def grow_tree_arrays(
    pv: np.ndarray,
    pv2: np.ndarray,
    ptv: np.ndarray,
    labels0: np.ndarray,
    num_classes: int,
    kappa: int,
    min_node_size: int,
    max_depth: int,
    use_margin: bool,
    rng: np.random.Generator,
    log_table: np.ndarray,
) -> dict:
    """Grow one tree over all rows of the prefix tables; returns flat arrays."""
    n = pv.shape[0]
    max_nodes = max(1, 2 * n - 1)
    kind = np.zeros(max_nodes, np.int8)
    t1 = np.zeros(max_nodes, np.int32)
    t2 = np.zeros(max_nodes, np.int32)
    tau = np.zeros(max_nodes, np.float64)
    gain = np.zeros(max_nodes, np.float64)
    left = np.full(max_nodes, -1, np.int32)
    right = np.full(max_nodes, -1, np.int32)
    label = np.zeros(max_nodes, np.int32)
    reason = np.zeros(max_nodes, np.int8)
    counts = np.zeros((max_nodes, num_classes), np.int64)
    idx = np.arange(n, dtype=np.int64)
    n_nodes = _grow(
        pv,
        pv2,
        ptv,
        np.asarray(labels0, dtype=np.int64),
        idx,
        num_classes,
        kappa,
        min_node_size,
        max_depth,
        use_margin,
        rng,
        log_table,
        kind,
        t1,
        t2,
        tau,
        gain,
        left,
        right,
        label,
        reason,
        counts,
    )
    return {
        "kind": kind[:n_nodes].copy(),
        "t1": t1[:n_nodes].copy(),
        "t2": t2[:n_nodes].copy(),
        "tau": tau[:n_nodes].copy(),
        "gain": gain[:n_nodes].copy(),
        "left": left[:n_nodes].copy(),
        "right": right[:n_nodes].copy(),
        "label": label[:n_nodes].copy(),
        "reason": reason[:n_nodes].copy(),
        "counts": counts[:n_nodes].copy(),
    }
