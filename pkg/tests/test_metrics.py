import numpy as np
import pytest

from core.data.splits import Segment
from core.data.synthetic import constant_series, linear_ramp, random_walk
from core.metrics import EvalPair, corr, mae, naive_baseline, rrse, safe_metric
from core.utils.exceptions import MetricError, ValidationError


class TestRrse:

    def test_perfect(self, rng):
        y = rng.normal(size=(3, 20))
        assert rrse(EvalPair(y, y)) == 0.0

    def test_grand_mean_prediction_is_one(self, rng):
        y = rng.normal(size=(3, 20))
        assert rrse(EvalPair(np.full_like(y, y.mean()), y)) == pytest.approx(1.0, abs=1e-12)

    def test_hand_example(self):
        assert rrse(EvalPair([[1.0, 2.0, 5.0]], [[1.0, 2.0, 3.0]])) == pytest.approx(np.sqrt(2.0), abs=1e-12)

    def test_zero_label_variance(self):
        with pytest.raises(MetricError):
            rrse(EvalPair([[1.0, 2.0]], [[3.0, 3.0]]))

    def test_common_affine_invariance(self, rng):
        y = rng.normal(size=(2, 30))
        p = y + rng.normal(scale=0.3, size=y.shape)
        base = rrse(EvalPair(p, y))
        assert rrse(EvalPair(-3.0 * p + 7.0, -3.0 * y + 7.0)) == pytest.approx(base, rel=1e-10)

    def test_zero_only_for_exact_match(self, rng):
        y = rng.normal(size=(2, 10))
        p = y.copy()
        p[1, 4] += 1e-9
        assert rrse(EvalPair(p, y)) > 0.0


class TestCorr:

    def test_identical(self, rng):
        y = rng.normal(size=(3, 40))
        assert corr(EvalPair(y, y)) == pytest.approx(1.0, abs=1e-12)

    def test_anti_identical(self, rng):
        y = rng.normal(size=(3, 40))
        y -= y.mean(axis=1, keepdims=True)
        assert corr(EvalPair(-y, y)) == pytest.approx(-1.0, abs=1e-12)

    def test_matches_pearson_per_variable(self):
        rng = np.random.default_rng(21)
        y = rng.normal(size=(2, 50))
        p = y + rng.normal(size=(2, 50))
        expected = np.mean([np.corrcoef(p[i], y[i])[0, 1] for i in range(2)])
        assert corr(EvalPair(p, y)) == pytest.approx(expected, abs=1e-12)

    def test_skips_degenerate_variables(self, rng):
        y = np.vstack([rng.normal(size=30), np.full(30, 2.0)])
        p = np.vstack([y[0], rng.normal(size=30)])
        assert corr(EvalPair(p, y)) == pytest.approx(1.0, abs=1e-12)

    def test_all_degenerate(self):
        with pytest.raises(MetricError):
            corr(EvalPair(np.ones((2, 5)), np.ones((2, 5))))

    def test_positive_affine_per_variable_invariance(self, rng):
        y = rng.normal(size=(2, 25))
        p = y + rng.normal(scale=0.5, size=y.shape)
        scaled = p * np.array([[2.0], [0.1]]) + np.array([[5.0], [-1.0]])
        assert corr(EvalPair(scaled, y)) == pytest.approx(corr(EvalPair(p, y)), abs=1e-12)


class TestEvalPair:

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            EvalPair(np.ones((2, 3)), np.ones((3, 2)))

    def test_non_finite(self):
        with pytest.raises(ValidationError):
            EvalPair([[np.nan]], [[1.0]])

    def test_mae(self):
        assert mae(EvalPair([[1.0, 3.0]], [[2.0, 1.0]])) == 1.5

    def test_safe_metric_returns_none_when_undefined(self):
        assert safe_metric(rrse, EvalPair([[1.0]], [[1.0]])) is None


class TestNaiveBaseline:

    def test_ramp_off_by_horizon(self):
        pair = naive_baseline(linear_ramp(30), Segment("test", 10, 30), window=3, horizon=1)
        np.testing.assert_array_equal(pair.labels - pair.predictions, np.ones_like(pair.labels))

    def test_constant_series_rrse_degenerate(self):
        pair = naive_baseline(constant_series(40, 2), Segment("test", 20, 40), window=3, horizon=2)
        with pytest.raises(MetricError):
            rrse(pair)

    def test_random_walk_shapes(self):
        series = random_walk(100, 3)
        pair = naive_baseline(series, Segment("test", 80, 100), window=5, horizon=3)
        assert pair.predictions.shape == pair.labels.shape == (3, 17)
