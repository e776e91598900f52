"""
Training Instances Sampler
Вибір k тренувальних міток, найближчих до середнього ембеддингу міні-батчу
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from core.autodiff.kernels import cosine_matrix
from core.model.encoder import EmbeddingBank
from core.utils.exceptions import SamplingError


@dataclass(frozen=True)
class SampleSelection:
    """
    Вибрані мітки та їх інстанси

    instance_refs[j] = (timestamp, variable), порядок: мітка за міткою, змінні всередині;
    embeddings - відповідні рядки банку (m x l, m = n * k)
    """
    timestamps: np.ndarray
    instance_refs: np.ndarray
    embeddings: np.ndarray
    positions: np.ndarray
    similarities: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return int(self.embeddings.shape[0])


def batch_mean(ops, embeddings):
    """h̄ = (1/n) Σ h_j, 1 x l; на стрічці разом з H"""
    return ops.mean_rows(embeddings)


def _candidates(bank: EmbeddingBank, exclude_timestamp: Optional[int]) -> np.ndarray:
    positions = np.arange(len(bank))
    if exclude_timestamp is not None:
        positions = positions[bank.timestamps != exclude_timestamp]
    return positions


def _gather(bank: EmbeddingBank, positions: np.ndarray, similarities=None) -> SampleSelection:
    n = bank.variables
    timestamps = bank.timestamps[positions]
    refs = np.column_stack([np.repeat(timestamps, n), np.tile(np.arange(n), positions.size)])
    embeddings = bank.embeddings[positions].reshape(positions.size * n, bank.hidden)
    return SampleSelection(timestamps, refs, embeddings, positions, similarities)


def _check_k(k: int, available: int) -> None:
    if k < 1:
        raise SamplingError(f"k must be >= 1, got {k}")
    if k > available:
        raise SamplingError(f"k={k} exceeds the {available} candidate timestamps in the bank")


def select_top_k(
    bank: EmbeddingBank,
    mean_embedding: np.ndarray,
    k: int,
    exclude_timestamp: Optional[int] = None,
) -> SampleSelection:
    """
    k міток банку з найбільшою cosine(Ē^i, h̄); рівні значення - менша мітка першою

    Args:
        bank: Банк ембеддингів епохи
        mean_embedding: h̄ (значення, 1 x l або l)
        k: Кількість міток
        exclude_timestamp: Прибрати мітку з кандидатів (аналіз чутливості)

    Returns:
        SampleSelection: m = n * k інстансів

    Raises:
        SamplingError: k більше за кількість кандидатів
    """
    positions = _candidates(bank, exclude_timestamp)
    _check_k(k, positions.size)
    query = np.asarray(mean_embedding, dtype=np.float64).reshape(1, -1)
    similarities = cosine_matrix(bank.means[positions], query)[:, 0]
    # стабільне сортування зберігає порядок міток серед рівних
    order = np.argsort(-similarities, kind="stable")[:k]
    return _gather(bank, positions[order], similarities[order])


def select_random(
    bank: EmbeddingBank,
    k: int,
    seed: Union[int, np.random.Generator, None] = None,
    exclude_timestamp: Optional[int] = None,
) -> SampleSelection:
    """
    k різних випадкових міток (варіант без семплера подібності)

    Args:
        bank: Банк ембеддингів
        k: Кількість міток
        seed: Seed або генератор запуску
    """
    positions = _candidates(bank, exclude_timestamp)
    _check_k(k, positions.size)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    chosen = rng.choice(positions.size, size=k, replace=False)
    return _gather(bank, positions[chosen])
