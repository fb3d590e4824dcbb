"""Literature baseline estimators used as benchmarking references.

Two methods: adaptive iteratively reweighted penalized least squares
(a Whittaker smoother whose weights progressively ignore peaks) and a
global polynomial fitted under the pinball loss at a low quantile.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from scipy import sparse
from scipy.linalg import solveh_banded

from .signal import Signal, as_signal


class SingularSystemError(np.linalg.LinAlgError):
    """The penalized least-squares system could not be factorized."""


class ConvergenceWarning(UserWarning):
    """An iterative fit stopped at max_iter without meeting its tolerance."""


@dataclass(frozen=True)
class AirPlsConfig:
    """Smoothness penalty and iteration limits of the reweighted smoother."""

    lam: float = 125577.0
    max_iter: int = 15
    order: int = 2

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")


@dataclass(frozen=True)
class QuantRegConfig:
    """Degree and quantile of the polynomial pinball fit."""

    degree: int = 4
    quantile: float = 0.05
    max_iter: int = 100

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if not 0 < self.quantile < 1:
            raise ValueError("quantile must lie in (0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@lru_cache(maxsize=32)
def _penalty_bands(n: int, order: int, lam: float) -> np.ndarray:
    # Upper banded form of lam * D^T D for solveh_banded, D the order-th
    # difference matrix of shape (n-order, n).
    coeffs = np.array([(-1) ** k * comb(order, k) for k in range(order + 1)], dtype=float)
    d = sparse.diags(
        [np.full(n - order, c) for c in coeffs],
        offsets=list(range(order + 1)),
        shape=(n - order, n),
    )
    a = (d.T @ d).tocsr()
    bands = np.zeros((order + 1, n))
    for k in range(order + 1):
        bands[order - k, k:] = a.diagonal(k)
    bands *= lam
    bands.flags.writeable = False
    return bands


def whittaker_solve(y: np.ndarray, weights: np.ndarray, lam: float, order: int = 2) -> np.ndarray:
    """Solve (W + lam * D^T D) z = W y through the banded Cholesky path."""
    n = y.size
    if n < order + 2:
        raise SingularSystemError(f"need at least {order + 2} samples for order {order}")
    ab = _penalty_bands(n, order, lam).copy()
    ab[order, :] += weights
    try:
        return solveh_banded(ab, weights * y, lower=False)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc


def airpls(signal, config: AirPlsConfig = AirPlsConfig()) -> Signal:
    """Iteratively reweighted Whittaker baseline.

    Points above the current fit lose all weight; points below it gain
    exponentially growing weight, pulling the smooth curve onto the
    signal's underside. Iteration stops when the remaining negative
    residual mass drops below 0.1% of the signal's L1 norm.
    """
    sig = as_signal(signal)
    y = sig.samples
    if y.size < config.order + 2:
        raise SingularSystemError(
            f"signal length {y.size} too short for difference order {config.order}"
        )
    y_l1 = np.abs(y).sum()
    w = np.ones_like(y)
    z = y
    for it in range(1, config.max_iter + 1):
        z = whittaker_solve(y, w, config.lam, config.order)
        residual = y - z
        neg = residual < 0
        if np.count_nonzero(neg) < 2:
            break
        neg_l1 = -residual[neg].sum()
        if neg_l1 < 0.001 * y_l1:
            break
        w[~neg] = 0.0
        w[neg] = np.exp(it * (-residual[neg]) / neg_l1)
    return Signal(z, sig.sample_period)


def _pinball_loss(residual: np.ndarray, tau: float) -> float:
    return float(np.sum(residual * (tau - (residual < 0))))


def quantile_poly(signal, config: QuantRegConfig = QuantRegConfig()) -> Signal:
    """Polynomial quantile regression via iteratively reweighted least squares.

    Fits coefficients minimizing the pinball loss at the configured
    quantile on the index domain rescaled to [-1, 1]. If the coefficient
    change never drops below 1e-8 a :class:`ConvergenceWarning` is raised
    and the best iterate (lowest pinball loss) is returned.
    """
    sig = as_signal(signal)
    y = sig.samples
    n = y.size
    if n <= config.degree + 1:
        raise ValueError(f"signal length {n} too short for degree {config.degree}")
    x = np.linspace(-1.0, 1.0, n)
    vander = np.polynomial.polynomial.polyvander(x, config.degree)
    eps = (np.abs(y).max() * 1e-6) ** 2 or 1e-24
    tau = config.quantile

    coef = np.linalg.lstsq(vander, y, rcond=None)[0]
    best_coef = coef
    best_loss = _pinball_loss(y - vander @ coef, tau)
    converged = False
    for _ in range(config.max_iter):
        residual = y - vander @ coef
        w = np.where(residual > 0, tau, 1.0 - tau) / np.sqrt(residual**2 + eps)
        sqrt_w = np.sqrt(w)
        new_coef = np.linalg.lstsq(vander * sqrt_w[:, None], y * sqrt_w, rcond=None)[0]
        loss = _pinball_loss(y - vander @ new_coef, tau)
        if loss < best_loss:
            best_loss, best_coef = loss, new_coef
        if np.max(np.abs(new_coef - coef)) < 1e-8:
            coef = new_coef
            converged = True
            break
        coef = new_coef
    if not converged:
        warnings.warn(
            f"quantile fit did not converge in {config.max_iter} iterations; "
            "returning best iterate",
            ConvergenceWarning,
            stacklevel=2,
        )
        coef = best_coef
    return Signal(vander @ coef, sig.sample_period)
