"""
Reverse-mode Tape
Стрічка обчислень для зворотного диференціювання та виконавець без стрічки
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.autodiff.kernels import DEFAULT_LEAKY_SLOPE, RULES, OpKind, apply
from core.utils.exceptions import GradientError, ValidationError
from core.utils.validators import Validators


@dataclass
class TapeNode:
    """Вузол стрічки: операція, посилання на входи, значення і градієнт"""
    op_kind: OpKind
    input_ids: Tuple[int, ...]
    value: np.ndarray
    attrs: Dict[str, Any] = field(default_factory=dict)
    grad: Optional[np.ndarray] = None
    requires_grad: bool = False
    detached: bool = False
    name: Optional[str] = None


class _OpsMixin:
    """
    Зручні обгортки над forward; спільні для Tape та InferenceOps,
    тому код моделі пишеться один раз для обох режимів
    """

    def forward(self, op_kind: OpKind, inputs: Sequence[Any], **attrs: Any) -> Any:
        raise NotImplementedError

    def matmul(self, a, b):
        return self.forward(OpKind.MATMUL, (a, b))

    def add(self, a, b):
        return self.forward(OpKind.ADD, (a, b))

    def subtract(self, a, b):
        return self.forward(OpKind.SUBTRACT, (a, b))

    def multiply(self, a, b):
        return self.forward(OpKind.MULTIPLY, (a, b))

    def scale(self, a, factor: float):
        return self.forward(OpKind.SCALE, (a,), factor=float(factor))

    def sigmoid(self, a):
        return self.forward(OpKind.SIGMOID, (a,))

    def tanh(self, a):
        return self.forward(OpKind.TANH, (a,))

    def leaky_relu(self, a, slope: float = DEFAULT_LEAKY_SLOPE):
        return self.forward(OpKind.LEAKY_RELU, (a,), slope=float(slope))

    def concat_cols(self, *parts):
        return self.forward(OpKind.CONCAT_COLS, parts)

    def mean_rows(self, a):
        return self.forward(OpKind.MEAN_ROWS, (a,))

    def mean_all(self, a):
        return self.forward(OpKind.MEAN_ALL, (a,))

    def l2_norm_rows(self, a):
        return self.forward(OpKind.L2_NORM_ROWS, (a,))

    def cosine_rows(self, a, b):
        return self.forward(OpKind.COSINE_ROWS, (a, b))

    def abs(self, a):
        return self.forward(OpKind.ABS, (a,))

    def sum(self, a):
        return self.forward(OpKind.SUM, (a,))

    def transpose(self, a):
        return self.forward(OpKind.TRANSPOSE, (a,))


class Tape(_OpsMixin):
    """
    Стрічка одного прямого проходу

    Вузли лише додаються; входи завжди посилаються на раніші вузли,
    тому зворотний прохід у зворотному порядку створення є топологічним.
    """

    def __init__(self):
        self.nodes: List[TapeNode] = []
        self._params: Dict[str, int] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def _append(self, node: TapeNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def constant(self, value: Any) -> int:
        """Лист без градієнта (ознаки, мітки, маски)"""
        return self._append(TapeNode(OpKind.LEAF, (), Validators.as_matrix(value, "constant")))

    def parameter(self, name: str, value: np.ndarray) -> int:
        """Лист-параметр з іменем; градієнт повертається з backward"""
        if name in self._params:
            raise ValidationError(f"parameter registered twice: {name}")
        node_id = self._append(
            TapeNode(OpKind.LEAF, (), Validators.as_matrix(value, name), requires_grad=True, name=name)
        )
        self._params[name] = node_id
        return node_id

    def detach(self, node_id: int) -> int:
        """Копія значення, через яку градієнт не проходить"""
        value = self.nodes[node_id].value
        return self._append(TapeNode(OpKind.DETACH, (node_id,), value, detached=True))

    def forward(self, op_kind: OpKind, inputs: Sequence[int], **attrs: Any) -> int:
        """
        Додавання вузла операції

        Args:
            op_kind: Тег операції
            inputs: Посилання на вузли-входи
            **attrs: Атрибути (factor, slope)

        Returns:
            int: Посилання на новий вузол
        """
        input_ids = tuple(int(i) for i in inputs)
        for i in input_ids:
            if not 0 <= i < len(self.nodes):
                raise GradientError(f"{op_kind.value}: unknown input node {i}")
        values = [self.nodes[i].value for i in input_ids]
        value = apply(op_kind, values, attrs)
        requires_grad = any(self.nodes[i].requires_grad for i in input_ids)
        return self._append(TapeNode(op_kind, input_ids, value, dict(attrs), requires_grad=requires_grad))

    def value(self, node_id: int) -> np.ndarray:
        return self.nodes[node_id].value

    def grad(self, node_id: int) -> np.ndarray:
        """Градієнт вузла після backward (нулі, якщо не досягнутий)"""
        node = self.nodes[node_id]
        if node.grad is None:
            return np.zeros_like(node.value)
        return node.grad

    @property
    def parameters(self) -> Dict[str, int]:
        return dict(self._params)

    def backward(self, root: int) -> Dict[str, np.ndarray]:
        """
        Зворотний прохід від скалярного кореня

        Args:
            root: Вузол 1x1

        Returns:
            Dict[str, np.ndarray]: Градієнт для кожного зареєстрованого параметра

        Raises:
            GradientError: корінь не скалярний
        """
        root_node = self.nodes[root]
        if root_node.value.shape != (1, 1):
            raise GradientError(f"backward root must be 1x1, got {root_node.value.shape}")

        for node in self.nodes:
            node.grad = None
        root_node.grad = np.ones((1, 1))

        for node_id in range(root, -1, -1):
            node = self.nodes[node_id]
            if node.grad is None or not node.requires_grad or not node.input_ids:
                continue
            inputs = [self.nodes[i].value for i in node.input_ids]
            input_grads = RULES[node.op_kind].backward(node.grad, inputs, node.value, node.attrs)
            for input_id, grad in zip(node.input_ids, input_grads):
                target = self.nodes[input_id]
                if grad is None or not target.requires_grad:
                    continue
                if target.grad is None:
                    target.grad = np.array(grad, dtype=np.float64)
                else:
                    target.grad = target.grad + grad

        return {name: self.grad(node_id) for name, node_id in self._params.items()}


class InferenceOps(_OpsMixin):
    """
    Виконавець без стрічки: ті самі ядра, посилання - це самі масиви.
    Використовується для банку ембеддингів і оцінювання, де градієнти не потрібні.
    """

    def constant(self, value: Any) -> np.ndarray:
        return Validators.as_matrix(value, "constant")

    def parameter(self, name: str, value: np.ndarray) -> np.ndarray:
        return value

    def detach(self, ref: np.ndarray) -> np.ndarray:
        return ref

    def forward(self, op_kind: OpKind, inputs: Sequence[np.ndarray], **attrs: Any) -> np.ndarray:
        return apply(op_kind, list(inputs), attrs)

    def value(self, ref: np.ndarray) -> np.ndarray:
        return ref
