"""Base-learner math: logistic output, log-likelihood, analytic gradient.

The gradient oracle is a central finite difference of blh itself; the
hand values are frozen from exact evaluations of the printed formulas.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reference_impls import central_difference
from udeed import (
    DimensionMismatchError,
    UdeedError,
    base_output_f,
    blh,
    blh_gradient,
    logistic_g,
)

LN3 = 1.0986122886681098  # score at which g = 0.75, f = 0.5

finite_floats = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
small_vectors = st.lists(finite_floats, min_size=1, max_size=5)


class TestLogisticG:
    def test_zero_weights(self):
        assert logistic_g([0.0, 0.0], [3.0, 1.0]) == 0.5

    def test_orthogonal_score(self):
        assert logistic_g([1.0, 0.0], [0.0, 1.0]) == 0.5

    def test_saturation_clamps(self):
        assert logistic_g([50.0], [1.0]) == 1.0 - 1e-15
        assert logistic_g([-50.0], [1.0]) == 1e-15

    def test_extreme_scores_stay_clamped(self):
        assert logistic_g([750.0], [1.0]) == 1.0 - 1e-15
        assert logistic_g([-750.0], [1.0]) == 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            logistic_g([1.0, 2.0], [1.0])


class TestBaseOutputF:
    def test_zero_weights(self):
        assert base_output_f([0.0, 0.0], [1.0, 1.0]) == 0.0

    def test_quarter_point(self):
        assert base_output_f([LN3], [1.0]) == pytest.approx(0.5, abs=1e-12)

    def test_saturation(self):
        assert base_output_f([50.0], [1.0]) == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(small_vectors)
    def test_open_interval_and_g_relation(self, values):
        w = np.array(values)
        x = np.ones_like(w)
        f = base_output_f(w, x)
        assert -1.0 < f < 1.0
        assert (f + 1.0) / 2.0 == pytest.approx(logistic_g(w, x), abs=1e-15)


class TestBlh:
    def test_zero_score_positive(self):
        assert blh([0.0, 0.0], [1.0, 1.0], 1) == -0.6931471805599453

    def test_zero_score_negative(self):
        assert blh([0.0, 0.0], [1.0, 1.0], -1) == -0.6931471805599453

    def test_quarter_point(self):
        assert blh([LN3], [1.0], 1) == pytest.approx(
            -0.2876820724517809, abs=1e-15
        )

    def test_label_checked(self):
        with pytest.raises(UdeedError, match="label"):
            blh([0.0], [1.0], 0)

    def test_y_symmetry_exact(self):
        w = np.array([0.3, -1.2, 0.7])
        x = np.array([1.5, 0.25, 1.0])
        assert blh(w, x, 1) == blh(-w, x, -1)

    def test_stability_at_700(self):
        for s in (700.0, -700.0):
            for y in (1, -1):
                value = blh([s], [1.0], y)
                assert math.isfinite(value)
                assert value <= 0.0

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(small_vectors, st.sampled_from([-1, 1]))
    def test_never_positive(self, values, y):
        w = np.array(values)
        assert blh(w, np.ones_like(w), y) <= 0.0


class TestBlhGradient:
    def test_hand_value_positive(self):
        grad = blh_gradient([0.0, 0.0], [1.0, 1.0], 1)
        assert grad.tolist() == [0.5, 0.5]

    def test_hand_value_negative(self):
        grad = blh_gradient([0.0, 0.0], [1.0, 1.0], -1)
        assert grad.tolist() == [-0.5, -0.5]

    def test_saturated_correct_prediction(self):
        grad = blh_gradient([40.0, 0.0], [1.0, 1.0], 1)
        assert np.all(np.abs(grad) < 1e-15)

    def test_stability_at_700(self):
        grad = blh_gradient([700.0], [1.0], -1)
        assert np.all(np.isfinite(grad))

    def test_label_checked(self):
        with pytest.raises(UdeedError, match="label"):
            blh_gradient([0.0], [1.0], 2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            blh_gradient([1.0], [1.0, 2.0], 1)

    def test_matches_finite_differences_100_draws(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            d = int(rng.integers(1, 6))
            w = rng.uniform(-2.0, 2.0, size=d)
            x = rng.uniform(-2.0, 2.0, size=d)
            y = int(rng.choice([-1, 1]))
            grad = blh_gradient(w, x, y)
            fd = central_difference(lambda wv: blh(wv, x, y), w)
            err = np.abs(grad - fd)
            tol = 1e-8 + 1e-4 * np.maximum(np.abs(grad), np.abs(fd))
            assert np.all(err <= tol)
