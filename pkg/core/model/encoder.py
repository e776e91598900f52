"""
Instance Encoder
Спільні GRU + 3-шаровий MLP: вікно інстансу довжини d -> ембеддинг розмірності l
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from core.autodiff.tape import InferenceOps
from core.data.batches import stack_features, valid_timestamps
from core.data.series import SeriesMatrix
from core.data.splits import Segment
from core.model.params import BoundModel, GruParams, MlpParams, ModelParams
from core.tasks.task_manager import TaskManager
from core.utils.exceptions import SplitError, ValidationError
from core.utils.logger import get_logger


logger = get_logger(__name__)


class EncodeMode(str, Enum):
    GRAD = "grad"
    DETACHED = "detached"


def gru_step(ops, gru: GruParams, x, h, ones):
    """
    Один крок GRU для стовпця входів x (n x 1) і стану h (n x l)

    r = σ(x W_r + h U_r + b_r), z = σ(x W_z + h U_z + b_z),
    c = tanh(x W_c + (r ⊙ h) U_c + b_c), h' = (1 - z) ⊙ h + z ⊙ c
    """
    r = ops.sigmoid(ops.add(ops.add(ops.matmul(x, gru.w_r), ops.matmul(h, gru.u_r)), gru.b_r))
    z = ops.sigmoid(ops.add(ops.add(ops.matmul(x, gru.w_z), ops.matmul(h, gru.u_z)), gru.b_z))
    c = ops.tanh(
        ops.add(ops.add(ops.matmul(x, gru.w_c), ops.matmul(ops.multiply(r, h), gru.u_c)), gru.b_c)
    )
    return ops.add(ops.multiply(ops.subtract(ones, z), h), ops.multiply(z, c))


def gru_forward(ops, gru: GruParams, features: np.ndarray, initial: Optional[np.ndarray] = None):
    """
    Прогін GRU по вікнах (рядок = вікно одного інстансу)

    Args:
        ops: Tape або InferenceOps
        gru: Прив'язані параметри GRU
        features: n x d вікна
        initial: Початковий стан n x l (нулі за замовчуванням)

    Returns:
        Посилання на останній прихований стан n x l
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] < 1:
        raise ValidationError(f"features must be n x d with d >= 1, got {features.shape}")
    rows, steps = features.shape
    hidden = ops.value(gru.b_r).shape[1]

    h = ops.constant(initial if initial is not None else np.zeros((rows, hidden)))
    ones = ops.constant(np.ones((rows, hidden)))
    for step in range(steps):
        x = ops.constant(features[:, step:step + 1])
        h = gru_step(ops, gru, x, h, ones)
    return h


def mlp_forward(ops, mlp: MlpParams, x):
    """Три лінійні шари, LeakyReLU після кожного (включно з останнім)"""
    for weight, bias in zip(mlp.weights, mlp.biases):
        x = ops.leaky_relu(ops.add(ops.matmul(x, weight), bias))
    return x


def encode_batch(ops, model: BoundModel, features: np.ndarray, mode: EncodeMode = EncodeMode.GRAD):
    """
    Ембеддинги інстансів: mlp(gru(вікно)) для кожного рядка

    Args:
        ops: Виконавець
        model: Прив'язані параметри
        features: n x d
        mode: GRAD - на стрічці з градієнтами; DETACHED - результат від'єднано

    Returns:
        Посилання на n x l
    """
    embeddings = mlp_forward(ops, model.mlp, gru_forward(ops, model.gru, features))
    if EncodeMode(mode) is EncodeMode.DETACHED:
        embeddings = ops.detach(embeddings)
    return embeddings


@dataclass(frozen=True)
class EmbeddingBank:
    """
    Від'єднані ембеддинги всіх тренувальних інстансів

    embeddings[i] = E^i (n x l) для timestamps[i]; means[i] = середнє E^i по змінних
    """
    timestamps: np.ndarray
    embeddings: np.ndarray
    means: np.ndarray
    epoch: int

    def __len__(self) -> int:
        return int(self.timestamps.shape[0])

    @property
    def variables(self) -> int:
        return int(self.embeddings.shape[1])

    @property
    def hidden(self) -> int:
        return int(self.embeddings.shape[2])


def build_bank(
    series: SeriesMatrix,
    segment: Segment,
    params: ModelParams,
    window: int,
    horizon: int,
    epoch: int = 0,
    chunk: int = 64,
    workers: int = 1,
) -> EmbeddingBank:
    """
    Кодування всіх валідних тренувальних міток без градієнтів

    Мітки обробляються чанками фіксованого розміру; кожен чанк пише у свої рядки,
    тож результат не залежить від кількості workers.

    Args:
        series: Нормалізована матриця
        segment: Тренувальний сегмент
        params: Поточні параметри (лише читаються)
        window: d
        horizon: h
        epoch: Мітка епохи для банку
        chunk: Міток на чанк
        workers: Потоків для чанків

    Returns:
        EmbeddingBank

    Raises:
        SplitError: у сегменті немає валідних міток
    """
    timestamps = valid_timestamps(segment, window, horizon)
    if timestamps.size == 0:
        raise SplitError(f"training segment [{segment.start}, {segment.end}) has no valid timestamps")

    n = series.variables
    hidden = params.hidden
    embeddings = np.empty((timestamps.size, n, hidden), dtype=np.float64)
    ops = InferenceOps()
    model = params.bind(ops)
    chunk = max(1, int(chunk))
    starts = list(range(0, timestamps.size, chunk))

    def encode_chunk(start: int) -> int:
        part = timestamps[start:start + chunk]
        features = stack_features(series, part, window)
        values = encode_batch(ops, model, features, EncodeMode.DETACHED)
        embeddings[start:start + part.size] = values.reshape(part.size, n, hidden)
        return part.size

    results = TaskManager(max_workers=workers).map(encode_chunk, starts)
    for result in results:
        if not result.ok:
            raise result.error

    means = embeddings.mean(axis=1)
    logger.debug(f"Embedding bank built: epoch={epoch}, timestamps={timestamps.size}, n={n}, l={hidden}")
    return EmbeddingBank(timestamps, embeddings, means, epoch)
