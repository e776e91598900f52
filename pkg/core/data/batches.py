"""
Instance Batches
Пакети інстансів: усі n змінних однієї часової мітки
"""

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from core.data.series import SeriesMatrix
from core.data.splits import Segment
from core.utils.exceptions import SplitError, ValidationError


@dataclass(frozen=True)
class InstanceBatch:
    """
    Інстанси часової мітки t

    features[i] = values[t-d+1 .. t, i], labels[i] = values[t+h, i]
    """
    timestamp: int
    features: np.ndarray
    labels: np.ndarray
    horizon: int
    window: int

    @property
    def size(self) -> int:
        return self.features.shape[0]


def valid_timestamps(segment: Segment, window: int, horizon: int) -> np.ndarray:
    """
    Часові мітки сегмента, для яких існує повне вікно і мітка всередині сегмента

    Вікно може виходити за ліву межу сегмента (rolling forecast),
    мітка t+h - ніколи не виходить за праву.
    """
    if window < 1 or horizon < 1:
        raise ValidationError(f"window and horizon must be >= 1, got d={window}, h={horizon}")
    first = max(segment.start, window - 1)
    last = segment.end - 1 - horizon
    if last < first:
        return np.arange(0, dtype=np.int64)
    return np.arange(first, last + 1, dtype=np.int64)


def make_batch(series: SeriesMatrix, timestamp: int, window: int, horizon: int) -> InstanceBatch:
    values = series.values
    t = int(timestamp)
    if t - window + 1 < 0 or t + horizon >= series.timestamps:
        raise ValidationError(f"timestamp {t} has no full window/label for d={window}, h={horizon}")
    features = values[t - window + 1:t + 1, :].T.copy()
    labels = values[t + horizon, :].reshape(-1, 1).copy()
    return InstanceBatch(t, features, labels, horizon, window)


def stack_features(series: SeriesMatrix, timestamps: np.ndarray, window: int) -> np.ndarray:
    """Вікна кількох міток одним масивом (len(timestamps) * n) x d, порядок мітка-змінна"""
    values = series.values
    n = series.variables
    out = np.empty((len(timestamps) * n, window), dtype=np.float64)
    for position, t in enumerate(timestamps):
        out[position * n:(position + 1) * n] = values[t - window + 1:t + 1, :].T
    return out


def batch_iter(
    series: SeriesMatrix,
    segment: Segment,
    window: int,
    horizon: int,
    shuffle: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Iterator[InstanceBatch]:
    """
    Пакети сегмента: хронологічно для оцінювання, перемішано (із seed) для навчання

    Args:
        series: Матриця спостережень
        segment: Сегмент поділу
        window: Довжина вікна d
        horizon: Горизонт h
        shuffle: Перемішати порядок
        rng: Генератор для перемішування

    Returns:
        Iterator[InstanceBatch]: По одному пакету на валідну мітку; помилка сегмента - одразу при виклику

    Raises:
        SplitError: у сегменті немає жодної валідної мітки
    """
    timestamps = valid_timestamps(segment, window, horizon)
    if timestamps.size == 0:
        raise SplitError(
            f"{segment.name} segment [{segment.start}, {segment.end}) has no valid timestamps "
            f"for d={window}, h={horizon}"
        )
    if shuffle:
        generator = rng if rng is not None else np.random.default_rng()
        timestamps = generator.permutation(timestamps)
    return _batches(series, timestamps, window, horizon)


def _batches(series: SeriesMatrix, timestamps: np.ndarray, window: int, horizon: int) -> Iterator[InstanceBatch]:
    for t in timestamps:
        yield make_batch(series, int(t), window, horizon)
