import numpy as np
import pytest

from core.autodiff import AdamState, adam_step
from core.utils.exceptions import OptimizerError, ShapeError, ValidationError


class TestAdamStep:

    def test_first_step_moves_by_lr_against_gradient_sign(self):
        params = {"w": np.array([[1.0, -2.0]])}
        grads = {"w": np.array([[0.5, -3.0]])}
        updated, state = adam_step(params, grads, AdamState.zeros_like(params), lr=0.1)
        # m_hat = g, v_hat = g^2 на першому кроці
        np.testing.assert_allclose(updated["w"], [[0.9, -1.9]], atol=1e-7)
        assert state.step == 1

    def test_bias_corrected_second_step_matches_manual(self):
        params = {"w": np.array([[0.0]])}
        state = AdamState.zeros_like(params)
        g1, g2 = 1.0, -2.0
        params, state = adam_step(params, {"w": np.array([[g1]])}, state, lr=0.01)
        params, state = adam_step(params, {"w": np.array([[g2]])}, state, lr=0.01)

        m = 0.9 * (0.1 * g1) + 0.1 * g2
        v = 0.999 * (0.001 * g1 ** 2) + 0.001 * g2 ** 2
        m_hat = m / (1 - 0.9 ** 2)
        v_hat = v / (1 - 0.999 ** 2)
        expected = -0.01 * g1 / (abs(g1) + 1e-8) - 0.01 * m_hat / (np.sqrt(v_hat) + 1e-8)
        np.testing.assert_allclose(params["w"], [[expected]], rtol=1e-12)

    def test_zero_gradient_leaves_parameter_and_moments(self):
        params = {"w": np.array([[1.0, 2.0]]), "b": np.array([[3.0]])}
        state = AdamState.zeros_like(params)
        params, state = adam_step(params, {"w": np.array([[1.0, 1.0]]), "b": np.array([[1.0]])}, state, 0.1)
        before_b = params["b"].copy()
        before_m = state.m["b"].copy()
        params, state = adam_step(params, {"w": np.array([[1.0, 1.0]]), "b": np.zeros((1, 1))}, state, 0.1)
        np.testing.assert_array_equal(params["b"], before_b)
        np.testing.assert_array_equal(state.m["b"], before_m)

    def test_missing_gradient_leaves_parameter(self):
        params = {"w": np.array([[1.0]])}
        updated, _ = adam_step(params, {}, AdamState.zeros_like(params), 0.1)
        np.testing.assert_array_equal(updated["w"], params["w"])

    def test_input_state_not_mutated(self):
        params = {"w": np.array([[1.0]])}
        state = AdamState.zeros_like(params)
        adam_step(params, {"w": np.array([[1.0]])}, state, 0.1)
        assert state.step == 0
        np.testing.assert_array_equal(state.m["w"], [[0.0]])

    def test_converges_on_quadratic(self):
        target = np.array([[3.0, -1.0]])
        params = {"w": np.zeros((1, 2))}
        state = AdamState.zeros_like(params)
        for _ in range(2000):
            params, state = adam_step(params, {"w": 2 * (params["w"] - target)}, state, 0.05)
        np.testing.assert_allclose(params["w"], target, atol=1e-2)

    def test_non_finite_gradient_rejected(self):
        params = {"w": np.array([[1.0]])}
        with pytest.raises(OptimizerError):
            adam_step(params, {"w": np.array([[np.inf]])}, AdamState.zeros_like(params), 0.1)

    def test_shape_mismatch_rejected(self):
        params = {"w": np.array([[1.0]])}
        with pytest.raises(ShapeError):
            adam_step(params, {"w": np.ones((2, 1))}, AdamState.zeros_like(params), 0.1)

    def test_non_positive_lr_rejected(self):
        params = {"w": np.array([[1.0]])}
        with pytest.raises(ValidationError):
            adam_step(params, {"w": np.array([[1.0]])}, AdamState.zeros_like(params), 0.0)
