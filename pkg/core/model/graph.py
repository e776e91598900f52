"""
Graph Aggregation
Граф інстансів між вибраними тренувальними та поточними інстансами, маска top-N і агрегація
"""

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from core.model.params import MappingParams
from core.utils.exceptions import ValidationError
from core.utils.logger import get_logger


logger = get_logger(__name__)


@dataclass(frozen=True)
class Adjacency:
    """
    weights - посилання на n x m косинусну матрицю A;
    mapped_samples - посилання на W_e e_j (m x l), спільне для A та агрегації;
    mask - булева n x m (None до застосування top-N)
    """
    weights: Any
    mapped_samples: Any
    mask: Optional[np.ndarray] = None
    neighbors: Optional[int] = None

    @property
    def divisor(self) -> int:
        """|N_i| = min(N, m)"""
        if self.mask is None:
            raise ValidationError("adjacency has no top-N mask yet")
        return int(min(self.neighbors, self.mask.shape[1]))


def build_adjacency(ops, embeddings, samples, maps: Optional[MappingParams]) -> Adjacency:
    """
    A_ij = cosine(W_h h_i, W_e e_j)

    Args:
        ops: Виконавець
        embeddings: H (n x l), режим із градієнтом
        samples: E_s (m x l), від'єднані
        maps: W_h / W_e або None (варіант без матриць відображення)

    Returns:
        Adjacency без маски
    """
    if maps is not None:
        mapped_batch = ops.matmul(embeddings, ops.transpose(maps.w_h))
        mapped_samples = ops.matmul(samples, ops.transpose(maps.w_e))
    else:
        mapped_batch = embeddings
        mapped_samples = samples
    weights = ops.cosine_rows(mapped_batch, mapped_samples)
    return Adjacency(weights, mapped_samples)


def top_n_mask(weights: np.ndarray, neighbors: int) -> np.ndarray:
    """
    Для кожного рядка - N найбільших ваг (усі, якщо m <= N); рівні - менший стовпець першим

    Args:
        weights: n x m значення ваг
        neighbors: N >= 1

    Returns:
        np.ndarray: Булева маска n x m
    """
    if neighbors < 1:
        raise ValidationError(f"neighbors must be >= 1, got {neighbors}")
    weights = np.asarray(weights, dtype=np.float64)
    rows, cols = weights.shape
    mask = np.zeros((rows, cols), dtype=bool)
    keep = min(neighbors, cols)
    order = np.argsort(-weights, axis=1, kind="stable")[:, :keep]
    np.put_along_axis(mask, order, True, axis=1)
    return mask


def mask_adjacency(ops, adjacency: Adjacency, neighbors: int, mask: Optional[np.ndarray] = None) -> Adjacency:
    """
    Застосування маски top-N (маска - константа для диференціювання)

    Args:
        mask: Готова маска (наприклад, зафіксована для перевірки градієнтів)
    """
    if mask is None:
        mask = top_n_mask(ops.value(adjacency.weights), neighbors)
    return replace(adjacency, mask=mask, neighbors=neighbors)


def aggregate(ops, adjacency: Adjacency):
    """
    ĥ_i = (1/|N_i|) Σ_{j∈N_i} A_ij W_e e_j

    Returns:
        Посилання на n x l
    """
    if adjacency.mask is None:
        raise ValidationError("aggregate requires a masked adjacency")
    mask = ops.constant(adjacency.mask.astype(np.float64))
    masked = ops.multiply(adjacency.weights, mask)
    summed = ops.matmul(masked, adjacency.mapped_samples)
    return ops.scale(summed, 1.0 / adjacency.divisor)


def dump_adjacency(path: Union[str, Path], weights: np.ndarray, mask: np.ndarray) -> Path:
    """
    Текстовий дамп для інспекції: спершу n рядків ваг, далі порожній рядок і n рядків маски (0/1)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# weights {weights.shape[0]}x{weights.shape[1]}\n")
        np.savetxt(f, weights, delimiter=",", fmt="%.10g")
        f.write("\n# mask\n")
        np.savetxt(f, mask.astype(int), delimiter=",", fmt="%d")
    logger.info(f"Adjacency dumped to {path}")
    return path
