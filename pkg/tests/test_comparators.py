import warnings

import numpy as np
import pytest

import _oracles
from dewline import (
    AirPlsConfig,
    ConvergenceWarning,
    QuantRegConfig,
    SingularSystemError,
    airpls,
    quantile_poly,
    whittaker_solve,
)


class TestWhittakerSolve:
    @pytest.mark.parametrize("order", [1, 2])
    def test_matches_dense_solve(self, order):
        rng = np.random.default_rng(4)
        for _ in range(30):
            n = int(rng.integers(order + 2, 51))
            y = rng.normal(size=n) * 5
            w = rng.uniform(0.1, 2.0, size=n)
            lam = float(rng.choice([1.0, 50.0, 1e4]))
            got = whittaker_solve(y, w, lam, order)
            want = _oracles.dense_whittaker(y, w, lam, order)
            assert np.allclose(got, want, rtol=1e-8, atol=1e-10)

    def test_too_short_raises(self):
        with pytest.raises(SingularSystemError):
            whittaker_solve(np.ones(3), np.ones(3), 1.0, 2)


class TestAirPls:
    def test_constant_signal_reproduced_exactly(self):
        z = airpls(np.full(40, 3.25), AirPlsConfig(lam=1e5)).samples
        assert np.allclose(z, 3.25, atol=1e-9)

    def test_smooth_peakless_input_reproduced(self):
        x = np.linspace(0, 4 * np.pi, 400)
        y = 0.5 * np.sin(x / 4) + 0.01 * x
        z = airpls(y, AirPlsConfig(lam=1e4)).samples
        assert np.max(np.abs(z - y)) < 0.05

    def test_shift_equivariance(self):
        rng = np.random.default_rng(12)
        y = rng.normal(size=300) + 3 * np.exp(-((np.arange(300) - 150) ** 2) / 50)
        a = airpls(y).samples
        b = airpls(y + 250.0).samples
        assert np.allclose(b - a, 250.0, atol=1e-6)

    def test_sits_under_peaks(self):
        n = 500
        idx = np.arange(n)
        base = 0.002 * idx
        peaks = 4 * np.exp(-((idx - 100) ** 2) / 18) + 6 * np.exp(-((idx - 350) ** 2) / 30)
        z = airpls(base + peaks, AirPlsConfig(lam=1e5)).samples
        assert np.mean((z - base) ** 2) < 0.1
        assert z[100] < peaks[100]  # fit does not chase the peak top

    def test_rejects_short_signal(self):
        with pytest.raises(SingularSystemError):
            airpls(np.ones(3))

    @pytest.mark.parametrize("kw", [dict(lam=0.0), dict(max_iter=0), dict(order=3)])
    def test_config_validation(self, kw):
        with pytest.raises(ValueError):
            AirPlsConfig(**kw)


class TestQuantilePoly:
    def test_exact_polynomial_recovered_any_quantile(self):
        x = np.linspace(-1, 1, 200)
        y = 2.0 - 0.5 * x + 0.25 * x**3
        for tau in (0.05, 0.5, 0.9):
            fit = quantile_poly(y, QuantRegConfig(degree=3, quantile=tau)).samples
            assert np.allclose(fit, y, rtol=1e-6, atol=1e-6)

    def test_degree_zero_median(self):
        rng = np.random.default_rng(21)
        y = rng.normal(size=201) * 3 + 7  # odd count: unique sample median
        fit = quantile_poly(y, QuantRegConfig(degree=0, quantile=0.5)).samples
        assert np.allclose(fit, np.median(y), atol=1e-4)

    def test_low_quantile_lies_under_most_samples(self):
        rng = np.random.default_rng(33)
        n = 2000
        y = 0.5 * np.linspace(-1, 1, n) ** 2 + rng.exponential(1.0, size=n)
        tau = 0.05
        fit = quantile_poly(y, QuantRegConfig(degree=2, quantile=tau)).samples
        frac_below = np.mean(y < fit)
        assert frac_below <= tau + 2 / np.sqrt(n)

    def test_pinball_loss_near_optimal(self):
        # The IRLS fit should not lose to a small random perturbation of itself.
        rng = np.random.default_rng(2)
        y = rng.normal(size=300) + np.linspace(0, 3, 300)
        cfg = QuantRegConfig(degree=2, quantile=0.1)
        fit = quantile_poly(y, cfg).samples
        base = _oracles.pinball_loss(y, fit, 0.1)
        for _ in range(10):
            jitter = fit + rng.normal(scale=0.05, size=fit.size)
            assert base <= _oracles.pinball_loss(y, jitter, 0.1) + 1e-9

    def test_nonconvergence_warns_and_returns(self):
        rng = np.random.default_rng(8)
        y = rng.normal(size=150)
        with pytest.warns(ConvergenceWarning):
            out = quantile_poly(y, QuantRegConfig(degree=4, quantile=0.05, max_iter=1))
        assert len(out) == 150

    def test_rejects_short_signal(self):
        with pytest.raises(ValueError):
            quantile_poly(np.ones(4), QuantRegConfig(degree=4))

    @pytest.mark.parametrize("kw", [dict(quantile=0.0), dict(quantile=1.0), dict(degree=-1)])
    def test_config_validation(self, kw):
        with pytest.raises(ValueError):
            QuantRegConfig(**kw)
