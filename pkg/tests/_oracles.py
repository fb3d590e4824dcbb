"""Brute-force reference implementations the fast code is checked against.

Everything here is deliberately naive: plain loops, no shared helpers
with the library, so a bug cannot hide on both sides of a comparison.
"""
import numpy as np


def window_minima(x, T, tie_policy="first"):
    """O(N*T) scan for interior indices equal to their window minimum."""
    n = len(x)
    out = []
    prev_was_min = False
    for i in range(n):
        if i < T or i > n - 1 - T:
            prev_was_min = False
            continue
        lo = min(x[j] for j in range(i - T, i + T + 1))
        is_min = x[i] == lo
        if is_min and not (tie_policy == "first" and prev_was_min):
            out.append(i)
        prev_was_min = is_min
    return out


def window_cost(x, t0, T):
    """Direct summation of the mean absolute deviation from x[t0]."""
    total = 0.0
    for j in range(-T, T + 1):
        total += abs(x[t0 + j] - x[t0])
    return total / (2 * T + 1)


def nearest_wet_distances(err_indices, wet_indices):
    """O(N^2) nearest-distance scan."""
    return [min(abs(i - j) for j in wet_indices) for i in err_indices]


def dense_whittaker(y, weights, lam, order):
    """Dense-matrix solve of (W + lam * D^T D) z = W y."""
    n = len(y)
    dt = np.diff(np.eye(n), order, axis=1)  # (n, n-order), equals D^T
    a = np.diag(weights) + lam * (dt @ dt.T)
    return np.linalg.solve(a, weights * np.asarray(y))


def piecewise_linear(anchors, n, edge_policy="hold"):
    """Pointwise evaluation of the interpolant, one index at a time."""
    out = []
    for i in range(n):
        prev_a = None
        next_a = None
        for idx, val in anchors:
            if idx <= i:
                prev_a = (idx, val)
            if idx >= i and next_a is None:
                next_a = (idx, val)
        if prev_a is None:
            first, second = anchors[0], (anchors[1] if len(anchors) > 1 else None)
            if edge_policy == "linear-extend" and second is not None:
                slope = (second[1] - first[1]) / (second[0] - first[0])
                out.append(first[1] + slope * (i - first[0]))
            else:
                out.append(first[1])
        elif next_a is None:
            last, before = anchors[-1], (anchors[-2] if len(anchors) > 1 else None)
            if edge_policy == "linear-extend" and before is not None:
                slope = (last[1] - before[1]) / (last[0] - before[0])
                out.append(last[1] + slope * (i - last[0]))
            else:
                out.append(last[1])
        elif prev_a[0] == next_a[0]:
            out.append(prev_a[1])
        else:
            (i0, v0), (i1, v1) = prev_a, next_a
            out.append(v0 + (v1 - v0) * (i - i0) / (i1 - i0))
    return out


def pinball_loss(y, fit, tau):
    total = 0.0
    for yi, fi in zip(y, fit):
        r = yi - fi
        total += tau * r if r >= 0 else (tau - 1) * r
    return total
