"""
Dense-matrix kernels
Прямі та зворотні правила для кожної операції рушія диференціювання
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.utils.exceptions import ShapeError


# Нижня межа норми у cosine / l2_norm_rows
NORM_FLOOR = 1e-12
DEFAULT_LEAKY_SLOPE = 0.01

Shape = Tuple[int, int]
Grads = List[Optional[np.ndarray]]


class OpKind(str, Enum):
    """Теги операцій, що записуються на стрічку"""
    LEAF = "leaf"
    DETACH = "detach"
    MATMUL = "matmul"
    ADD = "add"
    SUBTRACT = "subtract"
    MULTIPLY = "multiply"
    SCALE = "scale"
    SIGMOID = "sigmoid"
    TANH = "tanh"
    LEAKY_RELU = "leaky_relu"
    CONCAT_COLS = "concat_cols"
    MEAN_ROWS = "mean_rows"
    MEAN_ALL = "mean_all"
    L2_NORM_ROWS = "l2_norm_rows"
    COSINE_ROWS = "cosine_rows"
    ABS = "abs"
    SUM = "sum"
    TRANSPOSE = "transpose"


@dataclass(frozen=True)
class OpRule:
    """Перевірка форм, прямий і зворотний прохід однієї операції"""
    arity: Optional[int]
    check: Callable[[Sequence[Shape], Dict[str, Any]], None]
    forward: Callable[[Sequence[np.ndarray], Dict[str, Any]], np.ndarray]
    backward: Callable[[np.ndarray, Sequence[np.ndarray], np.ndarray, Dict[str, Any]], Grads]


# ==================== shape checks ====================

def _no_check(shapes: Sequence[Shape], attrs: Dict[str, Any]) -> None:
    return None


def _broadcastable(kind: OpKind) -> Callable[[Sequence[Shape], Dict[str, Any]], None]:
    def check(shapes: Sequence[Shape], attrs: Dict[str, Any]) -> None:
        (ar, ac), (br, bc) = shapes
        if br not in (ar, 1) or bc not in (ac, 1):
            raise ShapeError(kind.value, shapes, "second operand must match or broadcast over rows")
    return check


def _check_matmul(shapes: Sequence[Shape], attrs: Dict[str, Any]) -> None:
    if shapes[0][1] != shapes[1][0]:
        raise ShapeError(OpKind.MATMUL.value, shapes)


def _check_concat(shapes: Sequence[Shape], attrs: Dict[str, Any]) -> None:
    if not shapes or len({s[0] for s in shapes}) != 1:
        raise ShapeError(OpKind.CONCAT_COLS.value, shapes, "row counts differ")


def _check_cosine(shapes: Sequence[Shape], attrs: Dict[str, Any]) -> None:
    if shapes[0][1] != shapes[1][1]:
        raise ShapeError(OpKind.COSINE_ROWS.value, shapes)


# ==================== helpers ====================

def unbroadcast(grad: np.ndarray, shape: Shape) -> np.ndarray:
    """Сума градієнта по розмножених вимірах"""
    if shape[0] == 1 and grad.shape[0] != 1:
        grad = grad.sum(axis=0, keepdims=True)
    if shape[1] == 1 and grad.shape[1] != 1:
        grad = grad.sum(axis=1, keepdims=True)
    return grad


def sigmoid(x: np.ndarray) -> np.ndarray:
    # tanh-форма не переповнюється для великих |x|
    return 0.5 * (np.tanh(0.5 * x) + 1.0)


def row_norms(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(x * x, axis=1, keepdims=True))


def normalize_rows(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Повертає (x / max(|x|, floor), |x|)"""
    norms = row_norms(x)
    return x / np.maximum(norms, NORM_FLOOR), norms


def cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Попарна косинусна подібність рядків a (p x c) та b (q x c), p x q"""
    an, _ = normalize_rows(a)
    bn, _ = normalize_rows(b)
    return np.clip(an @ bn.T, -1.0, 1.0)


# ==================== backward rules ====================

def _leaf_backward(g, inputs, out, attrs) -> Grads:
    return []


def _matmul_backward(g, inputs, out, attrs) -> Grads:
    a, b = inputs
    return [g @ b.T, a.T @ g]


def _add_backward(g, inputs, out, attrs) -> Grads:
    return [g, unbroadcast(g, inputs[1].shape)]


def _subtract_backward(g, inputs, out, attrs) -> Grads:
    return [g, unbroadcast(-g, inputs[1].shape)]


def _multiply_backward(g, inputs, out, attrs) -> Grads:
    a, b = inputs
    return [g * b, unbroadcast(g * a, b.shape)]


def _scale_backward(g, inputs, out, attrs) -> Grads:
    return [g * attrs["factor"]]


def _sigmoid_backward(g, inputs, out, attrs) -> Grads:
    return [g * out * (1.0 - out)]


def _tanh_backward(g, inputs, out, attrs) -> Grads:
    return [g * (1.0 - out * out)]


def _leaky_relu_backward(g, inputs, out, attrs) -> Grads:
    slope = attrs.get("slope", DEFAULT_LEAKY_SLOPE)
    return [g * np.where(inputs[0] > 0, 1.0, slope)]


def _concat_backward(g, inputs, out, attrs) -> Grads:
    grads: Grads = []
    start = 0
    for x in inputs:
        width = x.shape[1]
        grads.append(g[:, start:start + width])
        start += width
    return grads


def _mean_rows_backward(g, inputs, out, attrs) -> Grads:
    x = inputs[0]
    return [np.broadcast_to(g / x.shape[0], x.shape).copy()]


def _mean_all_backward(g, inputs, out, attrs) -> Grads:
    x = inputs[0]
    return [np.full(x.shape, g[0, 0] / x.size)]


def _l2_norm_rows_backward(g, inputs, out, attrs) -> Grads:
    x = inputs[0]
    safe = np.maximum(out, NORM_FLOOR)
    grad = g * x / safe
    grad[out[:, 0] < NORM_FLOOR] = 0.0
    return [grad]


def _cosine_backward(g, inputs, out, attrs) -> Grads:
    a, b = inputs
    an, na = normalize_rows(a)
    bn, nb = normalize_rows(b)
    c = an @ bn.T
    ga = (g @ bn - np.sum(g * c, axis=1, keepdims=True) * an) / np.maximum(na, NORM_FLOOR)
    gb = (g.T @ an - np.sum(g * c, axis=0)[:, None] * bn) / np.maximum(nb, NORM_FLOOR)
    # нульовий вектор: подібність 0 і градієнт 0
    ga[na[:, 0] < NORM_FLOOR] = 0.0
    gb[nb[:, 0] < NORM_FLOOR] = 0.0
    return [ga, gb]


def _abs_backward(g, inputs, out, attrs) -> Grads:
    return [g * np.sign(inputs[0])]


def _sum_backward(g, inputs, out, attrs) -> Grads:
    return [np.full(inputs[0].shape, g[0, 0])]


def _transpose_backward(g, inputs, out, attrs) -> Grads:
    return [g.T]


# ==================== registry ====================

RULES: Dict[OpKind, OpRule] = {
    OpKind.MATMUL: OpRule(2, _check_matmul, lambda xs, at: xs[0] @ xs[1], _matmul_backward),
    OpKind.ADD: OpRule(2, _broadcastable(OpKind.ADD), lambda xs, at: xs[0] + xs[1], _add_backward),
    OpKind.SUBTRACT: OpRule(
        2, _broadcastable(OpKind.SUBTRACT), lambda xs, at: xs[0] - xs[1], _subtract_backward
    ),
    OpKind.MULTIPLY: OpRule(
        2, _broadcastable(OpKind.MULTIPLY), lambda xs, at: xs[0] * xs[1], _multiply_backward
    ),
    OpKind.SCALE: OpRule(1, _no_check, lambda xs, at: xs[0] * at["factor"], _scale_backward),
    OpKind.SIGMOID: OpRule(1, _no_check, lambda xs, at: sigmoid(xs[0]), _sigmoid_backward),
    OpKind.TANH: OpRule(1, _no_check, lambda xs, at: np.tanh(xs[0]), _tanh_backward),
    OpKind.LEAKY_RELU: OpRule(
        1,
        _no_check,
        lambda xs, at: np.where(xs[0] > 0, xs[0], at.get("slope", DEFAULT_LEAKY_SLOPE) * xs[0]),
        _leaky_relu_backward,
    ),
    OpKind.CONCAT_COLS: OpRule(
        None, _check_concat, lambda xs, at: np.concatenate(list(xs), axis=1), _concat_backward
    ),
    OpKind.MEAN_ROWS: OpRule(
        1, _no_check, lambda xs, at: np.mean(xs[0], axis=0, keepdims=True), _mean_rows_backward
    ),
    OpKind.MEAN_ALL: OpRule(
        1, _no_check, lambda xs, at: np.array([[np.mean(xs[0])]]), _mean_all_backward
    ),
    OpKind.L2_NORM_ROWS: OpRule(1, _no_check, lambda xs, at: row_norms(xs[0]), _l2_norm_rows_backward),
    OpKind.COSINE_ROWS: OpRule(
        2, _check_cosine, lambda xs, at: cosine_matrix(xs[0], xs[1]), _cosine_backward
    ),
    OpKind.ABS: OpRule(1, _no_check, lambda xs, at: np.abs(xs[0]), _abs_backward),
    OpKind.SUM: OpRule(1, _no_check, lambda xs, at: np.array([[np.sum(xs[0])]]), _sum_backward),
    OpKind.TRANSPOSE: OpRule(1, _no_check, lambda xs, at: xs[0].T.copy(), _transpose_backward),
}


def apply(op_kind: OpKind, inputs: Sequence[np.ndarray], attrs: Dict[str, Any]) -> np.ndarray:
    """
    Перевірка форм і обчислення значення операції

    Raises:
        ShapeError: форми входів не підходять для op_kind
    """
    rule = RULES[op_kind]
    shapes = [tuple(x.shape) for x in inputs]
    if any(len(s) != 2 for s in shapes):
        raise ShapeError(op_kind.value, shapes, "operands must be 2-D")
    if rule.arity is not None and len(inputs) != rule.arity:
        raise ShapeError(op_kind.value, shapes, f"expected {rule.arity} operands")
    rule.check(shapes, attrs)
    return rule.forward(inputs, attrs)
