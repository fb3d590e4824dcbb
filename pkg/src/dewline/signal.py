"""Core signal container shared by all estimators and metrics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Logger sampling period of the target sensors, in minutes.
DEFAULT_SAMPLE_PERIOD = 15.0


@dataclass(frozen=True, eq=False)
class Signal:
    """A uniformly sampled series of sensor amplitudes.

    Parameters
    ----------
    samples : array-like
        Amplitude values in mV. Must be one-dimensional, non-empty and
        finite (no NaN/inf).
    sample_period : float, optional
        Spacing between samples in minutes. Default is 15, the averaging
        interval of the wetness loggers this library targets.
    """

    samples: np.ndarray
    sample_period: float = DEFAULT_SAMPLE_PERIOD

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("signal must be a non-empty 1-d series")
        if not np.all(np.isfinite(samples)):
            raise ValueError("signal contains NaN or inf values")
        if not self.sample_period > 0:
            raise ValueError("sample_period must be positive")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size


def as_signal(data, sample_period: float = DEFAULT_SAMPLE_PERIOD) -> Signal:
    """Coerce an array-like to :class:`Signal`; pass a Signal through unchanged."""
    if isinstance(data, Signal):
        return data
    return Signal(np.asarray(data, dtype=float), sample_period)
