"""
Training Configuration
Гіперпараметри одного навчання та варіанти абляції
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator


class Variant(str, Enum):
    """full - повна модель; ns - випадковий семплер; nw - без W_h / W_e"""
    FULL = "full"
    NS = "ns"
    NW = "nw"

    @property
    def uses_similarity_sampler(self) -> bool:
        return self is not Variant.NS

    @property
    def uses_maps(self) -> bool:
        return self is not Variant.NW


class TrainConfig(BaseModel):
    """Конфігурація навчання (γ, епохи, λ, k, N, l, d, h, варіант, seed)"""
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    lr: float = 1e-4
    epochs: int = 100
    l2: float = 1e-4
    k: int = 10
    neighbors: int = 10
    hidden: int = 256
    window: int = 168
    horizon: int = 3
    variant: Variant = Variant.FULL
    seed: int = 0
    normalize: str = "max"
    patience: Optional[int] = None
    exclude_self: bool = False
    bank_chunk: int = 64
    bank_workers: int = 1
    eval_workers: int = 1

    @field_validator("lr")
    @classmethod
    def _positive_lr(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"lr must be > 0, got {value}")
        return value

    @field_validator("l2")
    @classmethod
    def _non_negative_l2(cls, value: float) -> float:
        if not value >= 0:
            raise ValueError(f"l2 must be >= 0, got {value}")
        return value

    @field_validator("epochs", "k", "neighbors", "hidden", "window", "horizon", "bank_chunk",
                     "bank_workers", "eval_workers")
    @classmethod
    def _at_least_one(cls, value: int, info) -> int:
        if value < 1:
            raise ValueError(f"{info.field_name} must be >= 1, got {value}")
        return value

    @field_validator("patience")
    @classmethod
    def _patience(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"patience must be >= 1 or null, got {value}")
        return value

    @field_validator("normalize")
    @classmethod
    def _scheme(cls, value: str) -> str:
        if value not in ("max", "none"):
            raise ValueError(f"normalize must be 'max' or 'none', got {value}")
        return value
