"""
Finite-difference gradient check
"""

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from core.autodiff.tape import InferenceOps, Tape
from core.utils.logger import get_logger


logger = get_logger(__name__)

# fn(ops, bound_params) -> посилання на скалярний корінь
ScalarFunction = Callable[[object, Dict[str, object]], object]


@dataclass
class GradCheckResult:
    max_error: float
    worst: Optional[Tuple[str, Tuple[int, int]]]
    finite: bool

    def passed(self, tolerance: float = 1e-4) -> bool:
        return self.finite and self.max_error < tolerance


def _bind(ops, params: Mapping[str, np.ndarray]) -> Dict[str, object]:
    return {name: ops.parameter(name, value) for name, value in params.items()}


def _evaluate(fn: ScalarFunction, params: Mapping[str, np.ndarray]) -> float:
    ops = InferenceOps()
    return float(np.asarray(fn(ops, _bind(ops, params)))[0, 0])


def analytic_gradients(fn: ScalarFunction, params: Mapping[str, np.ndarray]) -> Dict[str, np.ndarray]:
    tape = Tape()
    root = fn(tape, _bind(tape, params))
    return tape.backward(root)


def finite_difference_check(
    fn: ScalarFunction,
    params: Mapping[str, np.ndarray],
    epsilon: float = 1e-5,
) -> GradCheckResult:
    """
    Порівняння аналітичних градієнтів із центральними різницями

    Похибка для кожного елемента: |analytic - numeric| / max(1, |analytic|)

    Args:
        fn: Детермінована скалярна функція параметрів
        params: Точка перевірки
        epsilon: Крок різниць

    Returns:
        GradCheckResult: максимальна похибка та де вона досягнута
    """
    analytic = analytic_gradients(fn, params)
    base = {name: np.array(p, dtype=np.float64) for name, p in params.items()}

    max_error = 0.0
    worst = None
    for name, value in base.items():
        for index in np.ndindex(value.shape):
            original = value[index]
            value[index] = original + epsilon
            plus = _evaluate(fn, base)
            value[index] = original - epsilon
            minus = _evaluate(fn, base)
            value[index] = original

            numeric = (plus - minus) / (2.0 * epsilon)
            exact = analytic[name][index]
            if not (np.isfinite(numeric) and np.isfinite(exact)):
                logger.warning(f"Gradient check hit non-finite value at {name}{index}")
                return GradCheckResult(float("inf"), (name, index), False)

            error = abs(exact - numeric) / max(1.0, abs(exact))
            if error > max_error:
                max_error = error
                worst = (name, index)

    logger.debug(f"Gradient check: max_error={max_error:.3e}, worst={worst}")
    return GradCheckResult(max_error, worst, True)
