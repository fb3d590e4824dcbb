"""Command-line front end: generate scenes, estimate baselines, run benchmarks.

Every run is a deterministic function of its flags (seeds included), so
repeated invocations produce byte-identical artifacts. Relative output
paths resolve against $DEWLINE_OUT_DIR when it is set.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .benchmark import run_benchmark, run_comparison
from .comparators import AirPlsConfig, QuantRegConfig
from .estimator import EstimatorConfig, estimate
from .model import ModelParams, generate_scene

COMMANDS = ("generate", "estimate", "benchmark", "compare")
ENV_OUT_DIR = "DEWLINE_OUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    command: str
    output_path: Path
    input_path: Path | None = None
    estimator: EstimatorConfig = field(
        default_factory=lambda: EstimatorConfig(scale_T=5, cost_threshold_C0=1.0))
    model: ModelParams = field(default_factory=ModelParams)
    airpls: AirPlsConfig = field(default_factory=AirPlsConfig)
    quantreg: QuantRegConfig = field(default_factory=QuantRegConfig)
    comparators: tuple[str, ...] = ("proposed", "airpls", "quantreg")
    threshold_S: float = 5.0
    n_trials: int = 55
    fmt: str = "csv"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dewline",
        description="Baseline drift estimation for leaf-wetness sensor signals.",
    )
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--input", help="input sensor CSV (header 'mv' or 'timestamp,mv')")
    parser.add_argument("--output", required=True,
                        help=f"output path; relative paths resolve against ${ENV_OUT_DIR}")
    parser.add_argument("--scale-T", type=int, default=5, dest="scale_T",
                        help="observation scale: window half-width in samples")
    parser.add_argument("--cost-C0", type=float, default=1.0, dest="cost_C0",
                        help="cost threshold in mV for accepting a local minimum")
    parser.add_argument("--smooth-L", type=int, default=10, dest="smooth_L",
                        help="moving-average pre-filter length")
    parser.add_argument("--threshold-S", type=float, default=5.0, dest="threshold_S",
                        help="wet/dry threshold offset above the baseline, mV")
    parser.add_argument("--lambda", type=float, default=125577.0, dest="lam",
                        help="smoothness penalty of the penalized-least-squares comparator")
    parser.add_argument("--quantile", type=float, default=0.05,
                        help="quantile of the polynomial regression comparator")
    parser.add_argument("--degree", type=int, default=4,
                        help="polynomial degree of the regression comparator")
    parser.add_argument("--trials", type=int, default=55,
                        help="Monte-Carlo trials for benchmark/compare")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt",
                        help="report format for benchmark/compare outputs")
    parser.add_argument("--n-samples", type=int, default=9858, dest="n_samples",
                        help="length of generated synthetic scenes")
    return parser


def _resolve_output(raw: str) -> Path:
    path = Path(raw)
    out_dir = os.environ.get(ENV_OUT_DIR)
    if out_dir and not path.is_absolute():
        path = Path(out_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def parse_args(argv=None) -> RunConfig:
    args = _build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        input_path=Path(args.input) if args.input else None,
        output_path=_resolve_output(args.output),
        estimator=EstimatorConfig(
            scale_T=args.scale_T,
            cost_threshold_C0=args.cost_C0,
            smooth_len_L=args.smooth_L,
        ),
        model=ModelParams(n_samples=args.n_samples, seed=args.seed),
        airpls=AirPlsConfig(lam=args.lam),
        quantreg=QuantRegConfig(degree=args.degree, quantile=args.quantile),
        threshold_S=args.threshold_S,
        n_trials=args.trials,
        fmt=args.fmt,
    )


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        if config.command == "generate":
            scene = generate_scene(config.model)
            io.write_scene_csv(scene, config.output_path)
        elif config.command == "estimate":
            if config.input_path is not None:
                signal = io.read_sensor_csv(config.input_path)
            else:
                signal = generate_scene(config.model).s
            result = estimate(signal, config.estimator)
            io.write_estimate_csv(signal, result.baseline, config.threshold_S,
                                  config.output_path)
        elif config.command == "benchmark":
            result = run_benchmark(config.model, config.n_trials,
                                   smooth_len_L=config.estimator.smooth_len_L,
                                   threshold_S=config.threshold_S)
            io.write_benchmark(result, config.output_path, config.fmt)
        elif config.command == "compare":
            result = run_comparison(config.model, config.n_trials,
                                    estimator_config=config.estimator,
                                    airpls_config=config.airpls,
                                    quantreg_config=config.quantreg,
                                    methods=config.comparators)
            io.write_comparison(result, config.output_path, config.fmt)
        else:
            print(f"dewline: unknown command {config.command!r}", file=sys.stderr)
            return 2
    except FileNotFoundError as exc:
        print(f"dewline: io: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        module = type(exc).__module__.rsplit(".", 1)[-1]
        print(f"dewline: {module}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {config.output_path}")
    return 0


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
