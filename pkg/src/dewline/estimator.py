"""Baseline estimation by L1-cost selection of windowed local minima.

The estimator runs in three steps: moving-average smoothing, selection of
scale-T local minima whose mean absolute deviation over the window stays
below a cost threshold, and linear interpolation through the selected
anchors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import minimum_filter1d

from .signal import Signal, as_signal

EDGE_POLICIES = ("hold", "linear-extend")
TIE_POLICIES = ("first", "all")


class NoAnchorsError(ValueError):
    """No sample qualified as a baseline anchor; widen the cost threshold."""


@dataclass(frozen=True)
class EstimatorConfig:
    """Tuning knobs of the baseline estimator.

    scale_T is the half-width (in samples) of the window used both for the
    local-minimum test and the cost average. cost_threshold_C0 is the upper
    bound (mV) a local minimum's cost must stay strictly below to become an
    anchor. smooth_len_L is the pre-filter length.
    """

    scale_T: int
    cost_threshold_C0: float
    smooth_len_L: int = 10
    edge_policy: str = "hold"
    tie_policy: str = "first"

    def __post_init__(self):
        if self.scale_T < 1:
            raise ValueError("scale_T must be >= 1")
        if not self.cost_threshold_C0 > 0:
            raise ValueError("cost_threshold_C0 must be positive")
        if self.smooth_len_L < 1:
            raise ValueError("smooth_len_L must be >= 1")
        if self.edge_policy not in EDGE_POLICIES:
            raise ValueError(f"edge_policy must be one of {EDGE_POLICIES}")
        if self.tie_policy not in TIE_POLICIES:
            raise ValueError(f"tie_policy must be one of {TIE_POLICIES}")


@dataclass(frozen=True, eq=False)
class BaselineEstimate:
    """Selected anchors plus the interpolated baseline series."""

    anchors: list[tuple[int, float]]
    baseline: Signal
    config: EstimatorConfig

    @property
    def anchor_indices(self) -> np.ndarray:
        return np.array([i for i, _ in self.anchors], dtype=int)

    @property
    def anchor_values(self) -> np.ndarray:
        return np.array([v for _, v in self.anchors], dtype=float)


def _window_bounds(length: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    # Centered window [i - left, i + right], clipped at the edges. Even
    # lengths lean one sample toward the future.
    left = (length - 1) // 2
    right = length // 2
    idx = np.arange(n)
    lo = np.maximum(idx - left, 0)
    hi = np.minimum(idx + right, n - 1)
    return lo, hi


def smooth(signal, length: int) -> Signal:
    """Centered moving average with shrinking windows at the edges.

    Output length equals input length; a constant series is preserved and
    ``length=1`` is the identity.
    """
    sig = as_signal(signal)
    if length < 1:
        raise ValueError("filter length must be >= 1")
    x = sig.samples
    if length == 1:
        return sig
    lo, hi = _window_bounds(length, x.size)
    csum = np.concatenate(([0.0], np.cumsum(x)))
    out = (csum[hi + 1] - csum[lo]) / (hi - lo + 1)
    return Signal(out, sig.sample_period)


def local_minima(signal, scale_T: int, tie_policy: str = "first") -> np.ndarray:
    """Indices i in [T, N-1-T] where s(i) equals the minimum of s[i-T .. i+T].

    Under ``tie_policy='first'`` a run of equal minimal values contributes
    only its first index. Returns an empty array when no index qualifies.
    """
    sig = as_signal(signal)
    if scale_T < 1:
        raise ValueError("scale_T must be >= 1")
    if tie_policy not in TIE_POLICIES:
        raise ValueError(f"tie_policy must be one of {TIE_POLICIES}")
    x = sig.samples
    n = x.size
    if n <= 2 * scale_T:
        return np.array([], dtype=int)
    wmin = minimum_filter1d(x, size=2 * scale_T + 1, mode="nearest")
    is_min = x == wmin
    is_min[:scale_T] = False
    is_min[n - scale_T:] = False
    if tie_policy == "first":
        # Adjacent qualifying indices always carry equal values (overlapping
        # windows force it), so dropping any index whose predecessor also
        # qualifies keeps exactly the first of each run.
        run_continuation = np.zeros(n, dtype=bool)
        run_continuation[1:] = is_min[:-1]
        is_min &= ~run_continuation
    return np.flatnonzero(is_min)


def cost(signal, t0: int, scale_T: int) -> float:
    """Mean absolute deviation from s(t0) over the window [t0-T, t0+T].

    Nonnegative, and zero exactly when the window is constant.
    """
    sig = as_signal(signal)
    if scale_T < 1:
        raise ValueError("scale_T must be >= 1")
    x = sig.samples
    if t0 - scale_T < 0 or t0 + scale_T >= x.size:
        raise IndexError(
            f"window [{t0 - scale_T}, {t0 + scale_T}] exceeds signal bounds [0, {x.size - 1}]"
        )
    window = x[t0 - scale_T: t0 + scale_T + 1]
    return float(np.mean(np.abs(window - x[t0])))


def _window_costs(x: np.ndarray, indices: np.ndarray, scale_T: int) -> np.ndarray:
    if indices.size == 0:
        return np.array([], dtype=float)
    offsets = np.arange(-scale_T, scale_T + 1)
    windows = x[indices[:, None] + offsets[None, :]]
    return np.mean(np.abs(windows - x[indices, None]), axis=1)


def scan_candidates(signal, scale_T: int, tie_policy: str = "first"):
    """Local minima at scale T paired with their costs.

    Returns ``(indices, costs)``; useful for sweeping several cost
    thresholds without recomputing the window scan.
    """
    sig = as_signal(signal)
    indices = local_minima(sig, scale_T, tie_policy)
    return indices, _window_costs(sig.samples, indices, scale_T)


def select_anchors(signal, config: EstimatorConfig) -> list[tuple[int, float]]:
    """Local minima whose cost is strictly below the threshold, with values.

    An empty list is a valid return; callers that need a baseline should
    treat it as an estimation failure (see :func:`interpolate`).
    """
    sig = as_signal(signal)
    indices, costs = scan_candidates(sig, config.scale_T, config.tie_policy)
    keep = costs < config.cost_threshold_C0
    x = sig.samples
    return [(int(i), float(x[i])) for i in indices[keep]]


def interpolate(anchors, n: int, edge_policy: str = "hold",
                sample_period: float = 15.0) -> Signal:
    """Piecewise-linear series of length n through the given anchors.

    Before the first and after the last anchor the series is extended
    according to ``edge_policy``: ``hold`` keeps the terminal anchor value,
    ``linear-extend`` continues the slope of the terminal segment. A single
    anchor yields a constant series; an empty anchor list is an error.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if edge_policy not in EDGE_POLICIES:
        raise ValueError(f"edge_policy must be one of {EDGE_POLICIES}")
    if len(anchors) == 0:
        raise NoAnchorsError("cannot interpolate from an empty anchor set")
    idx = np.array([i for i, _ in anchors], dtype=float)
    vals = np.array([v for _, v in anchors], dtype=float)
    if np.any(np.diff(idx) <= 0):
        raise ValueError("anchor indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] > n - 1:
        raise ValueError("anchor indices must lie within [0, n-1]")
    grid = np.arange(n, dtype=float)
    out = np.interp(grid, idx, vals)
    if edge_policy == "linear-extend" and idx.size >= 2:
        head = grid < idx[0]
        tail = grid > idx[-1]
        first_slope = (vals[1] - vals[0]) / (idx[1] - idx[0])
        last_slope = (vals[-1] - vals[-2]) / (idx[-1] - idx[-2])
        out[head] = vals[0] + first_slope * (grid[head] - idx[0])
        out[tail] = vals[-1] + last_slope * (grid[tail] - idx[-1])
    return Signal(out, sample_period)


def estimate(signal, config: EstimatorConfig) -> BaselineEstimate:
    """Full pipeline: smooth, select anchors, interpolate.

    Anchors are reported against the smoothed signal. Raises
    :class:`NoAnchorsError` when no sample passes the cost test.
    """
    sig = as_signal(signal)
    n = len(sig)
    if n <= 2 * config.scale_T + config.smooth_len_L:
        raise ValueError(
            f"signal length {n} too short for scale_T={config.scale_T} "
            f"and smooth_len_L={config.smooth_len_L}"
        )
    smoothed = smooth(sig, config.smooth_len_L)
    anchors = select_anchors(smoothed, config)
    if not anchors:
        raise NoAnchorsError(
            f"no anchors below cost threshold {config.cost_threshold_C0}; "
            "widen the threshold or reduce the observation scale"
        )
    baseline = interpolate(anchors, n, config.edge_policy, sig.sample_period)
    return BaselineEstimate(anchors=anchors, baseline=baseline, config=config)
