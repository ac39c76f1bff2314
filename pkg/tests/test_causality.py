import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnmarkers import (ConfigError, DegenerateInput, InsufficientData,
                       granger_causality, granger_fit, granger_matrix,
                       pearson_correlation, transfer_entropy_binned,
                       transfer_entropy_gaussian)

finite_arrays = st.lists(
    st.floats(min_value=-1e3, max_value=1e3, allow_nan=False,
              allow_infinity=False),
    min_size=4, max_size=80).map(lambda v: np.asarray(v, dtype=np.float64))


def ar_pair(seed=7, T=100_000, a=0.5, b=0.4, c=0.1):
    """Driven AR(1): y_{t+1} = a y_t + b x_t + c eps_t with white-noise x."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(T)
    eps = rng.standard_normal(T)
    y = np.zeros(T)
    for t in range(T - 1):
        y[t + 1] = a * y[t] + b * x[t] + c * eps[t]
    return x, y


class TestPearson:
    def test_perfect_correlation(self):
        x = np.arange(10.0)
        assert pearson_correlation(x, 3.0 * x + 1.0) == pytest.approx(1.0)
        assert pearson_correlation(x, -x) == pytest.approx(-1.0)

    def test_constant_input_is_degenerate(self):
        with pytest.raises(DegenerateInput):
            pearson_correlation(np.ones(10), np.arange(10.0))

    @settings(max_examples=60, deadline=None)
    @given(finite_arrays, finite_arrays)
    def test_clamped_to_unit_interval(self, x, y):
        n = min(len(x), len(y))
        x, y = x[:n], y[:n]
        if np.ptp(x) == 0 or np.ptp(y) == 0:
            return
        assert -1.0 <= pearson_correlation(x, y) <= 1.0


class TestGrangerPreconditions:
    def test_too_short(self):
        with pytest.raises(InsufficientData):
            granger_causality(np.arange(3.0), np.arange(3.0) ** 2)

    def test_constant_target(self):
        with pytest.raises(DegenerateInput):
            granger_causality(np.arange(8.0), np.ones(8))

    def test_mismatched_lengths(self):
        with pytest.raises(DegenerateInput):
            granger_causality(np.arange(8.0), np.arange(9.0))

    def test_requires_1d(self):
        with pytest.raises(DegenerateInput):
            granger_causality(np.zeros((2, 8)), np.zeros((2, 8)))


class TestGrangerValues:
    def test_driven_ar_has_known_strength(self):
        # residual variance ratio (b^2 var x + c^2) / c^2 = 17 for b=0.4, c=0.1
        x, y = ar_pair()
        gc = granger_causality(x, y).value
        assert gc == pytest.approx(math.log(17.0), abs=0.05)

    def test_affine_invariance(self):
        rng = np.random.default_rng(11)
        x = rng.standard_normal(4000)
        y = 0.3 * np.roll(x, 1) + rng.standard_normal(4000)
        g1 = granger_causality(x, y).value
        g2 = granger_causality(5.5 * x - 3.0, -2.0 * y + 7.0).value
        assert g2 == pytest.approx(g1, rel=1e-9)

    def test_self_causality_is_negligible(self):
        # identical source duplicates the target's own past: ridge path, ~0
        rng = np.random.default_rng(2)
        y = rng.standard_normal(500)
        assert granger_causality(y, y).value < 1e-8

    def test_independent_noise_is_small(self):
        rng = np.random.default_rng(5)
        gc = granger_causality(rng.standard_normal(50_000),
                               rng.standard_normal(50_000)).value
        assert gc < 1e-3

    @settings(max_examples=80, deadline=None)
    @given(finite_arrays, finite_arrays)
    def test_nested_model_never_fits_worse(self, x, y):
        n = min(len(x), len(y))
        x, y = x[:n], y[:n]
        if np.ptp(y) == 0:
            return
        fit = granger_fit(x, y)
        assert fit.rss1 <= fit.rss0 * (1.0 + 1e-9) + 1e-12
        assert granger_causality(x, y).value >= 0.0


class TestTransferEntropy:
    def test_gaussian_form_is_half_the_causality(self):
        x, y = ar_pair(seed=9, T=5000)
        gc = granger_causality(x, y).value
        te = transfer_entropy_gaussian(x, y)
        assert te.value == gc / 2  # exact, shared fit
        assert te.kind == "te-gaussian"

    def test_delayed_binary_copy_carries_one_bit(self):
        rng = np.random.default_rng(3)
        x = rng.integers(0, 2, 100_000).astype(float)
        y = np.roll(x, 1)
        y[0] = 0.0
        te = transfer_entropy_binned(x, y, bins=2).value
        assert te == pytest.approx(math.log(2.0), abs=0.01)

    def test_bins_validated(self):
        x, y = ar_pair(seed=1, T=50)
        for bad in (1, 65, 0, -3):
            with pytest.raises(ConfigError):
                transfer_entropy_binned(x, y, bins=bad)

    def test_constant_sequence_gives_zero(self):
        y = np.arange(16.0)
        assert transfer_entropy_binned(np.ones(16), y, bins=4).value == 0.0
        assert transfer_entropy_binned(y, np.ones(16), bins=4).value == 0.0

    def test_too_short(self):
        with pytest.raises(InsufficientData):
            transfer_entropy_binned(np.arange(3.0), np.arange(3.0), bins=2)

    @settings(max_examples=80, deadline=None)
    @given(finite_arrays, finite_arrays, st.integers(min_value=2, max_value=16))
    def test_plug_in_estimate_non_negative(self, x, y, bins):
        n = min(len(x), len(y))
        assert transfer_entropy_binned(x[:n], y[:n], bins=bins).value >= 0.0

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(min_value=-8, max_value=8), min_size=4,
                    max_size=60),
           st.lists(st.integers(min_value=-8, max_value=8), min_size=4,
                    max_size=60),
           st.integers(min_value=1, max_value=3),
           st.integers(min_value=-3, max_value=3),
           st.integers(min_value=1, max_value=3),
           st.integers(min_value=-3, max_value=3),
           st.integers(min_value=2, max_value=8))
    def test_binning_exactly_affine_invariant(self, xs, ys, a1, b1, a2, b2, bins):
        # integer grids keep every binning quotient exact in floating point
        n = min(len(xs), len(ys))
        x = np.asarray(xs[:n], dtype=np.float64)
        y = np.asarray(ys[:n], dtype=np.float64)
        t0 = transfer_entropy_binned(x, y, bins=bins).value
        t1 = transfer_entropy_binned(a1 * x + b1, a2 * y + b2, bins=bins).value
        assert t0 == t1


class TestGrangerMatrix:
    def test_matches_pairwise(self):
        rng = np.random.default_rng(12)
        data = rng.standard_normal((6, 500))
        G = granger_matrix(data)
        for j in range(6):
            for i in range(6):
                if i == j:
                    assert G[j, i] == 0.0
                    continue
                pair = granger_causality(data[j], data[i]).value
                assert G[j, i] == pytest.approx(pair, abs=1e-12)

    def test_constant_channel_rows_are_zero(self):
        rng = np.random.default_rng(1)
        data = rng.standard_normal((5, 200))
        data[2] = 4.2
        G = granger_matrix(data)
        assert np.all(G[2, :] == 0.0) and np.all(G[:, 2] == 0.0)

    def test_preconditions(self):
        with pytest.raises(DegenerateInput):
            granger_matrix(np.zeros((1, 50)))
        with pytest.raises(InsufficientData):
            granger_matrix(np.zeros((3, 3)))
