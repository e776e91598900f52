"""
Adam Optimizer
Адаптивний оптимізатор з корекцією зсуву моментів
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Tuple

import numpy as np

from core.utils.exceptions import OptimizerError, ShapeError
from core.utils.validators import Validators


@dataclass
class AdamState:
    """Стан Adam: лічильник кроків і моменти для кожного параметра"""
    step: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def zeros_like(cls, params: Mapping[str, np.ndarray], **constants: float) -> "AdamState":
        return cls(
            m={name: np.zeros_like(p) for name, p in params.items()},
            v={name: np.zeros_like(p) for name, p in params.items()},
            **constants,
        )


def adam_step(
    params: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    lr: float,
) -> Tuple[Dict[str, np.ndarray], AdamState]:
    """
    Один крок Adam: p <- p - lr * m_hat / (sqrt(v_hat) + eps)

    Параметри без градієнта або з повністю нульовим градієнтом не змінюються
    (разом з їх моментами).

    Args:
        params: Параметри за іменами
        grads: Градієнти за тими ж іменами
        state: Поточний стан
        lr: Крок навчання (> 0)

    Returns:
        Tuple: нові параметри та новий стан

    Raises:
        OptimizerError: NaN/Inf у градієнті
    """
    Validators.require_positive(lr, "lr")
    step = state.step + 1
    m = dict(state.m)
    v = dict(state.v)
    updated: Dict[str, np.ndarray] = {}

    for name, param in params.items():
        grad = grads.get(name)
        if grad is None:
            updated[name] = param
            continue
        if grad.shape != param.shape:
            raise ShapeError("adam_step", [param.shape, grad.shape], f"gradient of {name}")
        if not np.all(np.isfinite(grad)):
            raise OptimizerError(f"non-finite gradient for parameter {name}")
        if not np.any(grad):
            updated[name] = param
            continue

        m_prev = m.get(name, np.zeros_like(param))
        v_prev = v.get(name, np.zeros_like(param))
        m[name] = state.beta1 * m_prev + (1.0 - state.beta1) * grad
        v[name] = state.beta2 * v_prev + (1.0 - state.beta2) * grad * grad

        m_hat = m[name] / (1.0 - state.beta1 ** step)
        v_hat = v[name] / (1.0 - state.beta2 ** step)
        updated[name] = param - lr * m_hat / (np.sqrt(v_hat) + state.eps)

    return updated, replace(state, step=step, m=m, v=v)
