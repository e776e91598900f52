"""
Run Configuration
Параметри одного запуску або сітки: CLI-прапорці, файл --config та значення за замовчуванням
"""

from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Set, Union

import yaml
from pydantic import (
    BaseModel, ConfigDict, PrivateAttr, ValidationError as PydanticValidationError, field_validator, model_validator,
)

from core.config.settings import Settings, get_settings
from core.config.train_config import TrainConfig, Variant
from core.data.datasets import HORIZONS, NEIGHBOR_GRID, REGISTRY, canonical_name
from core.utils.exceptions import ConfigError


# Ключі, які беруться з таблиці датасету, якщо не задані явно
TABLE_KEYS = ("hidden", "lr", "k", "neighbors")

# Значення "grid" у полях сітки
SWEEP_GRIDS = {"sweep_k": NEIGHBOR_GRID, "sweep_n": NEIGHBOR_GRID, "sweep_h": HORIZONS}


class RunConfig(BaseModel):
    """
    Конфігурація запуску

    Ключі збігаються з назвами CLI-прапорців (--lambda -> l2, --sweep-k -> sweep_k)
    """
    model_config = ConfigDict(extra="forbid")

    data: str
    horizon: int = 3
    window: int = 168
    hidden: int = 256
    k: int = 10
    neighbors: int = 10
    lr: float = 1e-4
    l2: float = 1e-4
    epochs: int = 100
    seed: int = 0
    variant: Variant = Variant.FULL
    normalize: str = "max"
    out: str = "report.yaml"
    sweep_k: Optional[List[int]] = None
    sweep_n: Optional[List[int]] = None
    sweep_h: Optional[List[int]] = None
    checkpoint: Optional[str] = None
    patience: Optional[int] = None
    exclude_self: bool = False
    dump_adjacency: Optional[str] = None
    data_dir: Optional[str] = None
    fractions: List[float] = [0.6, 0.2, 0.2]
    bank_chunk: int = 64
    bank_workers: int = 1
    eval_workers: int = 1
    sweep_workers: int = 1

    # ключі, задані прапорцями або файлом --config (None - поля конструктора)
    _explicit: Optional[Set[str]] = PrivateAttr(default=None)

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
            raise ValueError(f"lambda must be >= 0, got {value}")
        return value

    @field_validator("horizon", "window", "hidden", "k", "neighbors", "epochs", "bank_chunk",
                     "bank_workers", "eval_workers", "sweep_workers")
    @classmethod
    def _at_least_one(cls, value: int, info) -> int:
        if value < 1:
            raise ValueError(f"{info.field_name} must be >= 1, got {value}")
        return value

    @field_validator("sweep_k", "sweep_n", "sweep_h", mode="before")
    @classmethod
    def _named_grid(cls, value: Any, info) -> Any:
        if isinstance(value, str) and value.strip().lower() == "grid":
            return list(SWEEP_GRIDS[info.field_name])
        return value

    @field_validator("sweep_k", "sweep_n", "sweep_h")
    @classmethod
    def _sweep_list(cls, value: Optional[List[int]], info) -> Optional[List[int]]:
        if value is None:
            return None
        if not value:
            raise ValueError(f"{info.field_name} must not be empty")
        if any(v < 1 for v in value):
            raise ValueError(f"{info.field_name} entries must be >= 1, got {value}")
        return value

    @field_validator("normalize")
    @classmethod
    def _scheme(cls, value: str) -> str:
        if value not in ("max", "none"):
            raise ValueError(f"normalize must be 'max' or 'none', got {value}")
        return value

    @field_validator("patience")
    @classmethod
    def _patience(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"patience must be >= 1, got {value}")
        return value

    @model_validator(mode="after")
    def _fractions(self) -> "RunConfig":
        if len(self.fractions) != 3 or abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ValueError(f"fractions must be three values summing to 1, got {self.fractions}")
        return self

    @property
    def is_sweep(self) -> bool:
        return any(v is not None for v in (self.sweep_k, self.sweep_n, self.sweep_h))

    @property
    def dataset_name(self) -> Optional[str]:
        return canonical_name(self.data)

    def to_train_config(self) -> TrainConfig:
        return TrainConfig(
            lr=self.lr,
            epochs=self.epochs,
            l2=self.l2,
            k=self.k,
            neighbors=self.neighbors,
            hidden=self.hidden,
            window=self.window,
            horizon=self.horizon,
            variant=self.variant,
            seed=self.seed,
            normalize=self.normalize,
            patience=self.patience,
            exclude_self=self.exclude_self,
            bank_chunk=self.bank_chunk,
            bank_workers=self.bank_workers,
            eval_workers=self.eval_workers,
        )

    def echo(self) -> Dict[str, Any]:
        """Конфігурація для звіту (без полів сітки)"""
        data = self.model_dump(mode="json", exclude={"sweep_k", "sweep_n", "sweep_h", "sweep_workers"})
        return data

    @property
    def explicit_keys(self) -> FrozenSet[str]:
        if self._explicit is None:
            return frozenset(self.model_fields_set)
        return frozenset(self._explicit)

    def table_defaults(self, horizon: int) -> Dict[str, Any]:
        """Значення таблиці датасету для горизонту, крім явно заданих ключів"""
        name = self.dataset_name
        table = REGISTRY[name].hyper_params(horizon) if name is not None else None
        if table is None:
            return {}
        return {key: getattr(table, key) for key in TABLE_KEYS if key not in self.explicit_keys}

    def cell(self, horizon: int, k: int, neighbors: int, out: str) -> "RunConfig":
        """
        Одна клітинка сітки: той самий seed, інші h/k/N

        l та γ, не задані явно, беруться з таблиці датасету для horizon
        """
        update = {key: value for key, value in self.table_defaults(horizon).items() if key in ("hidden", "lr")}
        update.update({
            "horizon": horizon, "k": k, "neighbors": neighbors, "out": out,
            "sweep_k": None, "sweep_n": None, "sweep_h": None,
        })
        return self.model_copy(update=update)


def read_run_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Файл --config: плаский YAML-словник ключів RunConfig

    Raises:
        ConfigError: файл не читається або не є словником
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to read run config {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Run config {path} must be a flat key-value mapping")
    return {str(key).replace("-", "_"): value for key, value in data.items()}


def build_run_config(
    overrides: Mapping[str, Any],
    config_file: Optional[Union[str, Path]] = None,
    settings: Optional[Settings] = None,
) -> RunConfig:
    """
    Збирання RunConfig із шарів (пріоритет зростає):
    config.yaml (experiment/data/runtime) -> таблиця датасету -> файл --config -> прапорці

    Args:
        overrides: Явно задані прапорці (None-значення ігноруються)
        config_file: Файл --config
        settings: Глобальні налаштування (за замовчуванням get_settings())

    Raises:
        ConfigError: невалідні значення або невідомі ключі
    """
    settings = settings or get_settings()
    explicit: Dict[str, Any] = {}
    if config_file is not None:
        explicit.update(read_run_file(config_file))
    explicit.update({key: value for key, value in overrides.items() if value is not None})

    layered: Dict[str, Any] = settings.experiment.model_dump()
    layered.update({
        "data_dir": settings.data.data_dir,
        "normalize": settings.data.normalize,
        "fractions": list(settings.data.fractions),
    })
    layered.update(settings.runtime.model_dump())

    data = explicit.get("data")
    horizon = explicit.get("horizon", layered["horizon"])
    name = canonical_name(str(data)) if data is not None else None
    if name is not None:
        table = REGISTRY[name].hyper_params(int(horizon))
        if table is not None:
            layered.update({key: getattr(table, key) for key in TABLE_KEYS})

    layered.update(explicit)
    try:
        config = RunConfig(**layered)
    except PydanticValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e
    config._explicit = set(explicit)
    return config
