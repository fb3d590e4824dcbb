"""Monte-Carlo benchmarking of the estimator and the literature methods.

Trials share one scene per seed; candidate minima and their costs are
scanned once per observation scale so that sweeping the cost threshold
is nearly free. Per-trial seeds are derived as ``params.seed + trial``,
so a parallel runner mapping over trials would reproduce the serial
results exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import comparators, metrics
from .estimator import (
    BaselineEstimate,
    EstimatorConfig,
    estimate,
    interpolate,
    scan_candidates,
    smooth,
)
from .model import ModelParams, generate_scene
from .signal import Signal

DEFAULT_T_GRID = (3, 5, 7, 10, 15, 20)
DEFAULT_C0_GRID = (0.1, 0.5, 1.0, 2.0)


@dataclass(frozen=True, eq=False)
class CellResult:
    """Per-trial metric arrays for one (scale_T, cost_threshold) cell.

    n_anchors has one entry per trial (zero when nothing was selected);
    trials with an empty anchor set are counted in n_failed and excluded
    from the error-metric arrays, which need a baseline to exist.
    """

    scale_T: int
    cost_threshold_C0: float
    n_anchors: np.ndarray
    mse_selected: np.ndarray
    mse_full: np.ndarray
    p_fa: np.ndarray
    p_md: np.ndarray
    n_failed: int

    def mean(self, name: str) -> float:
        values = getattr(self, name)
        return float(np.mean(values)) if values.size else float("nan")


@dataclass(frozen=True, eq=False)
class BenchmarkResult:
    params: ModelParams
    threshold_S: float
    n_trials: int
    cells: list[CellResult]

    def cell(self, scale_T: int, cost_threshold_C0: float) -> CellResult:
        for c in self.cells:
            if c.scale_T == scale_T and c.cost_threshold_C0 == cost_threshold_C0:
                return c
        raise KeyError((scale_T, cost_threshold_C0))


@dataclass(frozen=True, eq=False)
class ComparisonResult:
    """Full-series MSE per method, one entry per trial."""

    params: ModelParams
    n_trials: int
    mse: dict[str, np.ndarray]

    def means(self) -> dict[str, float]:
        return {name: float(np.mean(values)) for name, values in self.mse.items()}


def run_benchmark(params: ModelParams, n_trials: int,
                  t_grid=DEFAULT_T_GRID, c0_grid=DEFAULT_C0_GRID,
                  smooth_len_L: int = 10, threshold_S: float = 5.0) -> BenchmarkResult:
    """Monte-Carlo sweep of the (T, C0) grid over n_trials seeds."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    acc = {
        (t, c0): {"n_anchors": [], "mse_selected": [], "mse_full": [],
                  "p_fa": [], "p_md": [], "failed": 0}
        for t in t_grid for c0 in c0_grid
    }
    for trial in range(n_trials):
        scene = generate_scene(replace(params, seed=params.seed + trial))
        smoothed = smooth(scene.s, smooth_len_L)
        n = len(scene.s)
        for t in t_grid:
            indices, costs = scan_candidates(smoothed, t)
            for c0 in c0_grid:
                slot = acc[(t, c0)]
                keep = indices[costs < c0]
                slot["n_anchors"].append(keep.size)
                if keep.size == 0:
                    slot["failed"] += 1
                    continue
                anchors = [(int(i), float(smoothed.samples[i])) for i in keep]
                baseline = interpolate(anchors, n, "hold", scene.s.sample_period)
                est = BaselineEstimate(
                    anchors=anchors, baseline=baseline,
                    config=EstimatorConfig(t, c0, smooth_len_L),
                )
                fa, md = metrics.fa_md_sets(scene.s, scene.b, baseline, threshold_S)
                slot["mse_selected"].append(metrics.mse_selected(est, scene.b))
                slot["mse_full"].append(metrics.mse_full(baseline, scene.b))
                slot["p_fa"].append(fa.size / n)
                slot["p_md"].append(md.size / n)
    cells = [
        CellResult(
            scale_T=t,
            cost_threshold_C0=c0,
            n_anchors=np.array(slot["n_anchors"], dtype=float),
            mse_selected=np.array(slot["mse_selected"], dtype=float),
            mse_full=np.array(slot["mse_full"], dtype=float),
            p_fa=np.array(slot["p_fa"], dtype=float),
            p_md=np.array(slot["p_md"], dtype=float),
            n_failed=slot["failed"],
        )
        for (t, c0), slot in acc.items()
    ]
    return BenchmarkResult(params=params, threshold_S=threshold_S,
                           n_trials=n_trials, cells=cells)


def run_comparison(params: ModelParams, n_trials: int,
                   estimator_config: EstimatorConfig | None = None,
                   airpls_config: comparators.AirPlsConfig | None = None,
                   quantreg_config: comparators.QuantRegConfig | None = None,
                   methods=("proposed", "airpls", "quantreg")) -> ComparisonResult:
    """Full-series baseline MSE of each method over n_trials scenes."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    est_cfg = estimator_config or EstimatorConfig(scale_T=5, cost_threshold_C0=1.0)
    air_cfg = airpls_config or comparators.AirPlsConfig()
    qr_cfg = quantreg_config or comparators.QuantRegConfig()
    mse: dict[str, list[float]] = {name: [] for name in methods}
    for trial in range(n_trials):
        scene = generate_scene(replace(params, seed=params.seed + trial))
        for name in methods:
            if name == "proposed":
                fitted: Signal = estimate(scene.s, est_cfg).baseline
            elif name == "airpls":
                fitted = comparators.airpls(scene.s, air_cfg)
            elif name == "quantreg":
                fitted = comparators.quantile_poly(scene.s, qr_cfg)
            else:
                raise ValueError(f"unknown method {name!r}")
            mse[name].append(metrics.mse_full(fitted, scene.b))
    return ComparisonResult(
        params=params, n_trials=n_trials,
        mse={name: np.array(vals) for name, vals in mse.items()},
    )
