"""Error metrics for baseline estimates against ground truth.

Besides plain mean squared errors this module implements the
detection-oriented metrics: false alarms (samples called wet only under
the estimated threshold), missed detections (wet only under the true
threshold) and the distance from each such error to the nearest sample
that is wet under both thresholds.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimator import BaselineEstimate
from .signal import as_signal


class NoWetPhaseError(ValueError):
    """No sample is wet under both thresholds; distances are undefined."""


@dataclass(frozen=True, eq=False)
class EvalReport:
    """Metric bundle for one estimate on one scene.

    d_histogram maps distance (samples) to relative frequency over the
    error indices; it is empty when there are no errors and None when no
    wet phase exists to measure distances against.
    """

    mse_selected: float
    mse_full: float
    p_fa: float
    p_md: float
    d_histogram: dict[int, float] | None
    n_anchors: int
    threshold_S: float


def mse_selected(estimate: BaselineEstimate, truth) -> float:
    """Mean squared anchor error: estimate vs truth at the anchor indices only."""
    truth_sig = as_signal(truth)
    if not estimate.anchors:
        raise ValueError("estimate has no anchors")
    idx = estimate.anchor_indices
    if idx[-1] >= len(truth_sig):
        raise ValueError("anchor index beyond truth series")
    diff = estimate.anchor_values - truth_sig.samples[idx]
    return float(np.mean(np.abs(diff) ** 2))


def mse_full(estimated, truth) -> float:
    """Mean squared difference over the full series."""
    est = as_signal(estimated)
    tru = as_signal(truth)
    if len(est) != len(tru):
        raise ValueError(f"length mismatch: {len(est)} vs {len(tru)}")
    return float(np.mean((est.samples - tru.samples) ** 2))


def _check_lengths(*arrays) -> None:
    sizes = {a.size for a in arrays}
    if len(sizes) != 1:
        raise ValueError(f"length mismatch among inputs: {sorted(sizes)}")


def _fa_md_from_thresholds(s, thr_true, thr_est):
    fa = np.flatnonzero((thr_est < s) & (s <= thr_true))
    md = np.flatnonzero((thr_true < s) & (s <= thr_est))
    return fa, md


def fa_md_sets(s, b_true, b_hat, threshold_S: float):
    """False-alarm and missed-detection index sets.

    FA holds indices wet under the estimated threshold b_hat + S but dry
    under the true one; MD the converse. The two sets are disjoint by
    construction. Divide the set sizes by N for the probabilities.
    """
    s_arr = as_signal(s).samples
    bt = as_signal(b_true).samples
    bh = as_signal(b_hat).samples
    _check_lengths(s_arr, bt, bh)
    return _fa_md_from_thresholds(s_arr, bt + threshold_S, bh + threshold_S)


def fa_md_sets_field(s, b_hat, threshold_S: float):
    """Field-data variant: the fixed threshold S plays the reference role
    and the adaptive threshold b_hat + S is evaluated against it."""
    s_arr = as_signal(s).samples
    bh = as_signal(b_hat).samples
    _check_lengths(s_arr, bh)
    fixed = np.full(s_arr.size, threshold_S)
    return _fa_md_from_thresholds(s_arr, bh + threshold_S, fixed)


def distance_to_wet(s, b_true, b_hat, threshold_S: float, err_indices,
                    offset_wet_phase: bool = True):
    """Distance from each error index to the nearest agreed-wet sample.

    A sample is agreed wet when it exceeds both thresholds; by default the
    thresholds include the +S offset (set ``offset_wet_phase=False`` to
    compare against the bare baselines instead). Returns ``(distances,
    histogram)`` where the histogram maps distance to relative frequency.
    Raises :class:`NoWetPhaseError` when no sample is agreed wet.
    """
    s_arr = as_signal(s).samples
    bt = as_signal(b_true).samples
    bh = as_signal(b_hat).samples
    _check_lengths(s_arr, bt, bh)
    off = threshold_S if offset_wet_phase else 0.0
    wet = np.flatnonzero((s_arr > bt + off) & (s_arr > bh + off))
    if wet.size == 0:
        raise NoWetPhaseError("no sample wet under both thresholds")
    err = np.asarray(err_indices, dtype=int)
    if err.size == 0:
        return np.array([], dtype=int), {}
    pos = np.searchsorted(wet, err)
    right = wet[np.minimum(pos, wet.size - 1)]
    left = wet[np.maximum(pos - 1, 0)]
    distances = np.minimum(np.abs(err - right), np.abs(err - left))
    values, counts = np.unique(distances, return_counts=True)
    histogram = {int(v): float(c) / err.size for v, c in zip(values, counts)}
    return distances, histogram


def evaluate(scene, estimate: BaselineEstimate, threshold_S: float = 5.0,
             offset_wet_phase: bool = True) -> EvalReport:
    """Assemble the full metric report for an estimate on a synthetic scene."""
    fa, md = fa_md_sets(scene.s, scene.b, estimate.baseline, threshold_S)
    n = len(scene.s)
    err = np.sort(np.concatenate([fa, md]))
    try:
        _, histogram = distance_to_wet(
            scene.s, scene.b, estimate.baseline, threshold_S, err, offset_wet_phase
        )
    except NoWetPhaseError:
        histogram = None
    return EvalReport(
        mse_selected=mse_selected(estimate, scene.b),
        mse_full=mse_full(estimate.baseline, scene.b),
        p_fa=fa.size / n,
        p_md=md.size / n,
        d_histogram=histogram,
        n_anchors=len(estimate.anchors),
        threshold_S=threshold_S,
    )
