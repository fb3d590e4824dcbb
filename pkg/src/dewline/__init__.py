"""Baseline drift estimation for dielectric leaf-wetness sensors.

The library covers the full workflow: a synthetic signal model with
ground truth, the windowed local-minimum baseline estimator (batch and
bounded-memory streaming forms), two literature comparators, the error
metrics used to benchmark them, and CSV/JSON tooling.
"""
from .benchmark import (
    BenchmarkResult,
    CellResult,
    ComparisonResult,
    run_benchmark,
    run_comparison,
)
from .comparators import (
    AirPlsConfig,
    ConvergenceWarning,
    QuantRegConfig,
    SingularSystemError,
    airpls,
    quantile_poly,
    whittaker_solve,
)
from .estimator import (
    BaselineEstimate,
    EstimatorConfig,
    NoAnchorsError,
    cost,
    estimate,
    interpolate,
    local_minima,
    scan_candidates,
    select_anchors,
    smooth,
)
from .metrics import (
    EvalReport,
    NoWetPhaseError,
    distance_to_wet,
    evaluate,
    fa_md_sets,
    fa_md_sets_field,
    mse_full,
    mse_selected,
)
from .model import (
    Constant,
    LogNormal,
    ModelParams,
    SyntheticScene,
    generate_baseline,
    generate_peaks,
    generate_scene,
)
from .signal import Signal, as_signal
from .streaming import StreamingBaseline, estimate_streaming

__version__ = "0.1.0"

__all__ = [
    "AirPlsConfig",
    "BaselineEstimate",
    "BenchmarkResult",
    "CellResult",
    "ComparisonResult",
    "Constant",
    "ConvergenceWarning",
    "EstimatorConfig",
    "EvalReport",
    "LogNormal",
    "ModelParams",
    "NoAnchorsError",
    "NoWetPhaseError",
    "QuantRegConfig",
    "Signal",
    "SingularSystemError",
    "StreamingBaseline",
    "SyntheticScene",
    "airpls",
    "as_signal",
    "cost",
    "distance_to_wet",
    "estimate",
    "estimate_streaming",
    "evaluate",
    "fa_md_sets",
    "fa_md_sets_field",
    "generate_baseline",
    "generate_peaks",
    "generate_scene",
    "interpolate",
    "local_minima",
    "mse_full",
    "mse_selected",
    "quantile_poly",
    "run_benchmark",
    "run_comparison",
    "scan_candidates",
    "select_anchors",
    "smooth",
    "whittaker_solve",
]
