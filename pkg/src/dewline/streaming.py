"""Online baseline estimation with bounded memory.

The streaming estimator reproduces the batch pipeline sample by sample:
prefix sums give the centered moving average, a ring of smoothed values
feeds the local-minimum and cost tests, and anchors trigger emission of
the finalized baseline segment behind them. Buffered state never exceeds
2*T + L + 1 slots regardless of stream length.

Anchor decisions are final ``scale_T + smooth_len_L // 2`` pushes after
their index. Baseline values are emitted in index order but only once the
segment they belong to is closed by the next anchor (or by ``flush``), so
every emitted value is final. With ``edge_policy='hold'`` the emitted
series equals the batch baseline exactly; with ``linear-extend`` the two
differ on the stretches before the first and after the last anchor, where
the stream can only hold the nearest anchor value.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .estimator import EstimatorConfig


class StreamingBaseline:
    """Single-owner streaming counterpart of :func:`dewline.estimator.estimate`.

    Parameters
    ----------
    config : EstimatorConfig
        Same knobs as the batch estimator.
    record_anchors : bool, optional
        Keep the accepted anchors on the instance (grows with anchor
        count, so off by default to preserve the O(T + L) memory bound).
    """

    def __init__(self, config: EstimatorConfig, record_anchors: bool = False):
        self.config = config
        self._T = config.scale_T
        self._L = config.smooth_len_L
        self._left = (self._L - 1) // 2
        self._right = self._L // 2
        self._window = 2 * self._T + 1

        self._prefixes: deque[float] = deque(maxlen=self._L)  # P[t-L+1 .. t]
        self._total = 0.0                                     # P[t+1]
        self._n_pushed = 0

        self._ring: list[float] = [0.0] * self._window
        self._n_smoothed = 0
        self._first_smoothed: float | None = None
        self._prev_center_was_min = False

        self._last_anchor: tuple[int, float] | None = None
        self._finished = False
        self._record = record_anchors
        self.anchors: list[tuple[int, float]] = []

    @property
    def buffer_occupancy(self) -> int:
        """Buffered slots currently in use (prefix ring + smoothed ring)."""
        return len(self._prefixes) + min(self._n_smoothed, self._window)

    @property
    def buffer_capacity(self) -> int:
        return 2 * self._T + self._L + 1

    def push(self, sample: float) -> list[tuple[int, float]]:
        """Feed one raw sample; return newly finalized (index, value) pairs."""
        if self._finished:
            raise RuntimeError("stream already flushed")
        x = float(sample)
        t = self._n_pushed
        if self._L == 1:
            self._n_pushed += 1
            return self._ingest_smoothed(x)
        self._prefixes.append(self._total)
        self._total += x
        self._n_pushed += 1
        j = t - self._right
        if j < 0:
            return []
        return self._ingest_smoothed(self._smoothed_at(lo=max(0, j - self._left), hi=t))

    def flush(self) -> list[tuple[int, float]]:
        """Declare end of stream; finalize tail smoothing and emission."""
        if self._finished:
            raise RuntimeError("stream already flushed")
        self._finished = True
        out: list[tuple[int, float]] = []
        n = self._n_pushed
        if self._L > 1:
            # Remaining smoothed indices use shrinking right windows.
            for j in range(max(0, n - self._right), n):
                lo = max(0, j - self._left)
                out.extend(self._ingest_smoothed(self._smoothed_at(lo=lo, hi=n - 1)))
        if n == 0:
            return out
        if self._last_anchor is not None:
            a, va = self._last_anchor
            out.extend((i, va) for i in range(a + 1, n))
        else:
            # Degraded fallback: no anchor ever qualified, hold the first
            # smoothed value for the whole stream.
            out.extend((i, self._first_smoothed) for i in range(n))
        return out

    def _smoothed_at(self, lo: int, hi: int) -> float:
        # (P[hi+1] - P[lo]) / count with the exact operands the batch
        # cumsum filter uses, so smoothed values match it bit for bit.
        # hi is always the latest pushed index, so P[hi+1] is the total.
        oldest = self._n_pushed - len(self._prefixes)
        p_lo = self._prefixes[lo - oldest]
        return (self._total - p_lo) / (hi - lo + 1)

    def _ingest_smoothed(self, value: float) -> list[tuple[int, float]]:
        idx = self._n_smoothed
        if self._first_smoothed is None:
            self._first_smoothed = value
        self._ring[idx % self._window] = value
        self._n_smoothed += 1
        if self._n_smoothed < self._window:
            return []
        center = idx - self._T
        center_val = self._ring[center % self._window]
        is_min = center_val == min(self._ring)
        suppressed = (
            self.config.tie_policy == "first" and is_min and self._prev_center_was_min
        )
        self._prev_center_was_min = is_min
        if not is_min or suppressed:
            return []
        window = np.array(
            [self._ring[(center - self._T + k) % self._window] for k in range(self._window)]
        )
        if not float(np.mean(np.abs(window - center_val))) < self.config.cost_threshold_C0:
            return []
        return self._accept_anchor(center, center_val)

    def _accept_anchor(self, index: int, value: float) -> list[tuple[int, float]]:
        if self._record:
            self.anchors.append((index, value))
        if self._last_anchor is None:
            emitted = [(i, value) for i in range(index + 1)]
        else:
            a, va = self._last_anchor
            slope = (value - va) / (index - a)  # mirror np.interp's rounding
            emitted = [(i, va + slope * (i - a)) for i in range(a + 1, index)]
            emitted.append((index, value))
        self._last_anchor = (index, value)
        return emitted


def estimate_streaming(samples, config: EstimatorConfig):
    """Generator form: consume an iterable of samples, yield baseline values.

    Values come out in index order, finalized; the tail after the last
    anchor is emitted when the input is exhausted.
    """
    est = StreamingBaseline(config)
    for sample in samples:
        for _, value in est.push(sample):
            yield value
    for _, value in est.flush():
        yield value
