"""File formats: sensor CSV ingestion, scene/estimate export, report emission.

All CSV output uses a dot decimal separator, UTF-8 and LF line endings,
with floats written in shortest round-trip form so that re-parsing
recovers bit-identical values. See docs/output_schemas.md for the column
layouts.
"""
from __future__ import annotations

import json
from datetime import datetime
from pathlib import Path

import numpy as np

from .benchmark import BenchmarkResult, ComparisonResult
from .metrics import EvalReport
from .model import SyntheticScene
from .signal import Signal


class MalformedRowError(ValueError):
    """A CSV row failed to parse; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NonUniformSamplingError(ValueError):
    """Timestamps deviate from a uniform grid by more than 1% of the period."""


def _fmt(value: float) -> str:
    return repr(float(value))


def _parse_timestamp(token: str, line_no: int) -> float:
    """Timestamp in minutes: numeric tokens pass through, ISO-8601 converts."""
    try:
        return float(token)
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(token).timestamp() / 60.0
    except ValueError:
        raise MalformedRowError(line_no, f"unparseable timestamp {token!r}") from None


def read_sensor_csv(path) -> Signal:
    """Read a sensor series: header ``mv`` or ``timestamp,mv``.

    Rows with timestamps must be uniformly spaced within 1% of the median
    period; the period (in minutes) lands in ``Signal.sample_period``.
    Malformed rows raise :class:`MalformedRowError` naming the line.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise MalformedRowError(1, "empty file")
    header = lines[0].strip().lstrip("﻿")
    if header == "mv":
        with_timestamps = False
    elif header == "timestamp,mv":
        with_timestamps = True
    else:
        raise MalformedRowError(1, f"expected header 'mv' or 'timestamp,mv', got {header!r}")
    values: list[float] = []
    stamps: list[float] = []
    for offset, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != (2 if with_timestamps else 1):
            raise MalformedRowError(offset, f"expected {2 if with_timestamps else 1} fields")
        if with_timestamps:
            stamps.append(_parse_timestamp(parts[0].strip(), offset))
        try:
            mv = float(parts[-1])
        except ValueError:
            raise MalformedRowError(offset, f"unparseable amplitude {parts[-1]!r}") from None
        if not np.isfinite(mv):
            raise MalformedRowError(offset, f"non-finite amplitude {parts[-1]!r}")
        values.append(mv)
    if not values:
        raise MalformedRowError(len(lines), "no data rows")
    period = 15.0
    if with_timestamps and len(stamps) > 1:
        diffs = np.diff(stamps)
        period = float(np.median(diffs))
        if period <= 0 or np.any(np.abs(diffs - period) > 0.01 * period):
            raise NonUniformSamplingError(
                f"timestamps are not uniform within 1% of the {period:g}-minute period"
            )
    return Signal(np.array(values), sample_period=period)


def write_sensor_csv(signal: Signal, path) -> None:
    """Write a single-column ``mv`` file that read_sensor_csv round-trips."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("mv\n")
        for v in signal.samples:
            fh.write(_fmt(v) + "\n")


def write_scene_csv(scene: SyntheticScene, path) -> None:
    """Export a synthetic scene as ``index,h,b,n,s`` rows."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,h,b,n,s\n")
        for i in range(len(scene.s)):
            fh.write(
                f"{i},{_fmt(scene.h.samples[i])},{_fmt(scene.b.samples[i])},"
                f"{_fmt(scene.n.samples[i])},{_fmt(scene.s.samples[i])}\n"
            )


def write_estimate_csv(s: Signal, baseline: Signal, threshold_S: float, path) -> None:
    """Export ``index,s,b_hat,wet`` with wet = (s > b_hat + S) as 0/1."""
    wet = s.samples > baseline.samples + threshold_S
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,s,b_hat,wet\n")
        for i in range(len(s)):
            fh.write(f"{i},{_fmt(s.samples[i])},{_fmt(baseline.samples[i])},{int(wet[i])}\n")


_BENCH_FIELDS = ("mean_n_anchors", "mean_mse_selected", "mean_mse_full",
                 "mean_p_fa", "mean_p_md")


def benchmark_rows(result: BenchmarkResult) -> list[dict]:
    """Flatten a benchmark grid to one summary dict per (T, C0) cell."""
    rows = []
    for cell in result.cells:
        row = {
            "scale_T": cell.scale_T,
            "cost_C0": cell.cost_threshold_C0,
            "trials": result.n_trials,
            "failed": cell.n_failed,
            "mean_n_anchors": cell.mean("n_anchors"),
            "mean_mse_selected": cell.mean("mse_selected"),
            "mean_mse_full": cell.mean("mse_full"),
            "mean_p_fa": cell.mean("p_fa"),
            "mean_p_md": cell.mean("p_md"),
        }
        rows.append(row)
    rows.sort(key=lambda r: (r["scale_T"], r["cost_C0"]))
    return rows


def write_benchmark(result: BenchmarkResult, path, fmt: str = "csv") -> None:
    rows = benchmark_rows(result)
    if fmt == "json":
        _write_json(rows, path)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("scale_T,cost_C0,trials,failed," + ",".join(_BENCH_FIELDS) + "\n")
        for r in rows:
            head = f"{r['scale_T']},{_fmt(r['cost_C0'])},{r['trials']},{r['failed']}"
            fh.write(head + "," + ",".join(_fmt(r[f]) for f in _BENCH_FIELDS) + "\n")


def comparison_rows(result: ComparisonResult) -> list[dict]:
    means = result.means()
    return [
        {"method": name, "trials": result.n_trials, "mean_mse_full": means[name]}
        for name in result.mse
    ]


def write_comparison(result: ComparisonResult, path, fmt: str = "csv") -> None:
    rows = comparison_rows(result)
    if fmt == "json":
        _write_json(rows, path)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("method,trials,mean_mse_full\n")
        for r in rows:
            fh.write(f"{r['method']},{r['trials']},{_fmt(r['mean_mse_full'])}\n")


def _write_json(payload, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def report_json(report: EvalReport) -> str:
    """Machine-readable form of an evaluation report."""
    payload = {
        "mse_selected": report.mse_selected,
        "mse_full": report.mse_full,
        "p_fa": report.p_fa,
        "p_md": report.p_md,
        "n_anchors": report.n_anchors,
        "threshold_S": report.threshold_S,
        "d_histogram": (
            None if report.d_histogram is None
            else {str(k): v for k, v in sorted(report.d_histogram.items())}
        ),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_text(report: EvalReport) -> str:
    """Aligned-column form of an evaluation report for terminals."""
    rows = [
        ("mse_selected (mV^2)", f"{report.mse_selected:.6g}"),
        ("mse_full (mV^2)", f"{report.mse_full:.6g}"),
        ("p_fa", f"{report.p_fa:.6g}"),
        ("p_md", f"{report.p_md:.6g}"),
        ("n_anchors", str(report.n_anchors)),
        ("threshold_S (mV)", f"{report.threshold_S:g}"),
    ]
    if report.d_histogram is None:
        rows.append(("d_histogram", "undefined (no wet phase)"))
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows) + "\n"


def histogram_csv(histogram: dict[int, float]) -> str:
    """Render a distance histogram as ``distance,frequency`` lines."""
    lines = ["distance,frequency"]
    for dist in sorted(histogram):
        lines.append(f"{dist},{_fmt(histogram[dist])}")
    return "\n".join(lines) + "\n"
