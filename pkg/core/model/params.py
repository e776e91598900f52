"""
Model Parameters
Іменовані матриці GRU, MLP, матриць відображення та вихідного шару (множина Θ)
"""

from dataclasses import dataclass
from typing import Any, Dict, Generic, Mapping, Optional, Tuple, TypeVar

import numpy as np

from core.utils.exceptions import ValidationError


Ref = TypeVar("Ref")

MLP_LAYERS = 3
GRU_GATES = ("r", "z", "c")


@dataclass(frozen=True)
class GruParams(Generic[Ref]):
    """Вхідні ваги 1 x l, рекурентні l x l, зсуви 1 x l"""
    w_r: Ref
    w_z: Ref
    w_c: Ref
    u_r: Ref
    u_z: Ref
    u_c: Ref
    b_r: Ref
    b_z: Ref
    b_c: Ref


@dataclass(frozen=True)
class MlpParams(Generic[Ref]):
    """Рівно три лінійні шари l -> l (ваги in x out)"""
    weights: Tuple[Ref, ...]
    biases: Tuple[Ref, ...]


@dataclass(frozen=True)
class MappingParams(Generic[Ref]):
    """W_h та W_e, обидві l x l"""
    w_h: Ref
    w_e: Ref


@dataclass(frozen=True)
class HeadParams(Generic[Ref]):
    """Лінійний шар 2l -> 1"""
    weight: Ref
    bias: Ref


@dataclass(frozen=True)
class BoundModel(Generic[Ref]):
    """Параметри, прив'язані до конкретного виконавця (стрічки або inference)"""
    gru: GruParams
    mlp: MlpParams
    maps: Optional[MappingParams]
    head: HeadParams
    refs: Dict[str, Any]


def expected_shapes(hidden: int, use_maps: bool) -> Dict[str, Tuple[int, int]]:
    """Імена параметрів у фіксованому порядку та їх форми"""
    shapes: Dict[str, Tuple[int, int]] = {}
    for gate in GRU_GATES:
        shapes[f"encoder.gru.w_{gate}"] = (1, hidden)
    for gate in GRU_GATES:
        shapes[f"encoder.gru.u_{gate}"] = (hidden, hidden)
    for gate in GRU_GATES:
        shapes[f"encoder.gru.b_{gate}"] = (1, hidden)
    for layer in range(MLP_LAYERS):
        shapes[f"encoder.mlp.{layer}.weight"] = (hidden, hidden)
        shapes[f"encoder.mlp.{layer}.bias"] = (1, hidden)
    if use_maps:
        shapes["graph.w_h"] = (hidden, hidden)
        shapes["graph.w_e"] = (hidden, hidden)
    shapes["head.weight"] = (2 * hidden, 1)
    shapes["head.bias"] = (1, 1)
    return shapes


def _fan_in(name: str, hidden: int) -> int:
    if ".gru.w_" in name:
        return 1
    if name == "head.weight":
        return 2 * hidden
    return hidden


class ModelParams:
    """
    Усі параметри моделі за іменами

    Початкові значення: ваги ~ U[-1/sqrt(fan_in), 1/sqrt(fan_in)], зсуви нульові.
    """

    def __init__(self, tensors: Mapping[str, np.ndarray], hidden: int, use_maps: bool = True):
        self.hidden = int(hidden)
        self.use_maps = bool(use_maps)
        shapes = expected_shapes(self.hidden, self.use_maps)
        if set(tensors) != set(shapes):
            missing = sorted(set(shapes) - set(tensors))
            extra = sorted(set(tensors) - set(shapes))
            raise ValidationError(f"parameter set mismatch: missing={missing}, unexpected={extra}")
        self.tensors: Dict[str, np.ndarray] = {}
        for name in shapes:
            value = np.array(tensors[name], dtype=np.float64)
            if value.shape != shapes[name]:
                raise ValidationError(f"{name}: expected shape {shapes[name]}, got {value.shape}")
            self.tensors[name] = value

    @classmethod
    def initialize(cls, hidden: int, use_maps: bool = True, seed: int = 0) -> "ModelParams":
        """
        Випадкова ініціалізація

        Args:
            hidden: Розмірність l
            use_maps: Чи є W_h / W_e (False для варіанта nw)
            seed: Seed генератора
        """
        if hidden < 1:
            raise ValidationError(f"hidden size must be >= 1, got {hidden}")
        rng = np.random.default_rng(seed)
        tensors = {}
        for name, shape in expected_shapes(hidden, use_maps).items():
            if ".b_" in name or name.endswith("bias"):
                tensors[name] = np.zeros(shape)
            else:
                bound = 1.0 / np.sqrt(_fan_in(name, hidden))
                tensors[name] = rng.uniform(-bound, bound, size=shape)
        return cls(tensors, hidden, use_maps)

    def names(self) -> Tuple[str, ...]:
        return tuple(self.tensors)

    def replace(self, tensors: Mapping[str, np.ndarray]) -> "ModelParams":
        return ModelParams({**self.tensors, **tensors}, self.hidden, self.use_maps)

    def copy(self) -> "ModelParams":
        return ModelParams({k: v.copy() for k, v in self.tensors.items()}, self.hidden, self.use_maps)

    def bind(self, ops) -> BoundModel:
        """
        Реєстрація параметрів у виконавці

        Args:
            ops: Tape (параметри стають листками з градієнтом) або InferenceOps

        Returns:
            BoundModel: Типізований доступ до посилань
        """
        refs = {name: ops.parameter(name, value) for name, value in self.tensors.items()}
        return assemble(refs, self.use_maps)


def assemble(refs: Mapping[str, Any], use_maps: bool = True) -> BoundModel:
    """Типізований доступ до вже зареєстрованих посилань за іменами параметрів"""
    gru = GruParams(**{attr: refs[f"encoder.gru.{attr}"] for attr in GruParams.__dataclass_fields__})
    mlp = MlpParams(
        weights=tuple(refs[f"encoder.mlp.{i}.weight"] for i in range(MLP_LAYERS)),
        biases=tuple(refs[f"encoder.mlp.{i}.bias"] for i in range(MLP_LAYERS)),
    )
    maps = MappingParams(refs["graph.w_h"], refs["graph.w_e"]) if use_maps else None
    head = HeadParams(refs["head.weight"], refs["head.bias"])
    return BoundModel(gru, mlp, maps, head, dict(refs))
