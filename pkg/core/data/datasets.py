"""
Dataset Registry
Відомі бенчмарки, їх розміри та підібрані гіперпараметри
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

from core.data.series import SeriesMatrix
from core.utils.logger import get_logger


logger = get_logger(__name__)

HORIZONS: Tuple[int, ...] = (3, 6, 12, 24)

# Сітка пошуку k та N (--sweep-k grid, --sweep-n grid)
NEIGHBOR_GRID: Tuple[int, ...] = (3, 5, 10, 20, 30)

DATASET_EXTENSIONS = (".txt", ".txt.gz", ".csv", ".gz")


@dataclass(frozen=True)
class HyperParams:
    hidden: int
    lr: float
    k: int
    neighbors: int


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    timestamps: int
    variables: int
    sample_rate: str
    # horizon -> (k, N)
    selections: Dict[int, Tuple[int, int]]
    hidden: int
    lr: float

    def hyper_params(self, horizon: int) -> Optional[HyperParams]:
        if horizon not in self.selections:
            return None
        k, neighbors = self.selections[horizon]
        return HyperParams(self.hidden, self.lr, k, neighbors)


REGISTRY: Dict[str, DatasetInfo] = {
    "traffic": DatasetInfo(
        "traffic", 17544, 862, "1 hour",
        {3: (30, 20), 6: (5, 30), 12: (10, 30), 24: (3, 10)}, hidden=256, lr=0.0001,
    ),
    "electricity": DatasetInfo(
        "electricity", 26304, 321, "1 hour",
        {3: (5, 20), 6: (3, 3), 12: (10, 5), 24: (5, 20)}, hidden=512, lr=0.0001,
    ),
    "exchange_rate": DatasetInfo(
        "exchange_rate", 7588, 8, "1 day",
        {3: (20, 20), 6: (5, 10), 12: (10, 10), 24: (5, 20)}, hidden=512, lr=0.0001,
    ),
}

# Альтернативні написання імен
ALIASES = {"exchange-rate": "exchange_rate", "exchange": "exchange_rate"}


def canonical_name(name_or_path: str) -> Optional[str]:
    """Ім'я бенчмарку для шляху або імені (None, якщо невідомий)"""
    stem = Path(name_or_path).name.lower()
    for ext in DATASET_EXTENSIONS:
        if stem.endswith(ext):
            stem = stem[: -len(ext)]
            break
    stem = ALIASES.get(stem, stem)
    if stem in REGISTRY:
        return stem
    return None


def resolve_dataset_path(data: str, data_dir: Optional[str] = None) -> Path:
    """
    Пошук файлу датасету

    Порядок: шлях як є; <data_dir>/<data>; <data_dir>/<name><ext> для відомих імен.
    data_dir береться з аргументу або IGMTF_DATA_DIR.

    Returns:
        Path: Перший існуючий кандидат або вихідний шлях (помилку дасть load_matrix)
    """
    direct = Path(data)
    if direct.is_file():
        return direct

    root = data_dir or os.environ.get("IGMTF_DATA_DIR")
    if root:
        candidates = [Path(root) / data]
        name = canonical_name(data)
        if name is not None:
            candidates += [Path(root) / f"{name}{ext}" for ext in DATASET_EXTENSIONS]
        for candidate in candidates:
            if candidate.is_file():
                logger.debug(f"Resolved dataset {data} -> {candidate}")
                return candidate
    return direct


def check_known_shape(name: Optional[str], series: SeriesMatrix) -> bool:
    """Попередження, якщо відомий датасет має неочікувану форму"""
    if name is None or name not in REGISTRY:
        return True
    info = REGISTRY[name]
    if (series.timestamps, series.variables) != (info.timestamps, info.variables):
        logger.warning(
            f"Dataset {name} has shape {series.timestamps}x{series.variables}, "
            f"expected {info.timestamps}x{info.variables}"
        )
        return False
    return True
