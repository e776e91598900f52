"""
Evaluation Metrics
RRSE та CORR на денормалізованих значеннях, наївний базовий прогноз
"""

from dataclasses import dataclass

import numpy as np

from core.data.batches import valid_timestamps
from core.data.series import SeriesMatrix
from core.data.splits import Segment
from core.utils.exceptions import MetricError, SplitError, ValidationError


@dataclass(frozen=True)
class EvalPair:
    """Прогнози та мітки n x M (M - кількість оцінених міток), вихідний масштаб"""
    predictions: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        predictions = np.asarray(self.predictions, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.float64)
        if predictions.shape != labels.shape or predictions.ndim != 2:
            raise ValidationError(
                f"predictions {predictions.shape} and labels {labels.shape} must be equal 2-D shapes"
            )
        if not (np.all(np.isfinite(predictions)) and np.all(np.isfinite(labels))):
            raise ValidationError("evaluation pair contains NaN or Inf")
        object.__setattr__(self, "predictions", predictions)
        object.__setattr__(self, "labels", labels)


def rrse(pair: EvalPair) -> float:
    """
    sqrt(Σ(p - y)²) / sqrt(Σ(y - ȳ)²), ȳ - загальне середнє міток по всіх змінних і мітках

    Raises:
        MetricError: нульова дисперсія міток
    """
    labels = pair.labels
    denominator = np.sqrt(np.sum((labels - labels.mean()) ** 2))
    if denominator == 0:
        raise MetricError("RRSE undefined: labels have zero variance")
    return float(np.sqrt(np.sum((pair.predictions - labels) ** 2)) / denominator)


def corr(pair: EvalPair) -> float:
    """
    Середня по змінних кореляція Пірсона в часі; змінні з нульовою дисперсією
    міток або прогнозів не враховуються

    Raises:
        MetricError: жодної невиродженої змінної
    """
    p = pair.predictions - pair.predictions.mean(axis=1, keepdims=True)
    y = pair.labels - pair.labels.mean(axis=1, keepdims=True)
    sigma_p = np.sqrt(np.sum(p * p, axis=1))
    sigma_y = np.sqrt(np.sum(y * y, axis=1))
    valid = (sigma_p > 0) & (sigma_y > 0)
    if not np.any(valid):
        raise MetricError("CORR undefined: every variable has zero variance")
    per_variable = np.sum(p * y, axis=1)[valid] / (sigma_p[valid] * sigma_y[valid])
    return float(np.clip(per_variable.mean(), -1.0, 1.0))


def mae(pair: EvalPair) -> float:
    return float(np.mean(np.abs(pair.predictions - pair.labels)))


def naive_baseline(series: SeriesMatrix, segment: Segment, window: int, horizon: int) -> EvalPair:
    """
    Прогноз x^{t+h} = x^t з тим самим вирівнюванням міток, що й evaluate

    Args:
        series: Матриця (нормалізована або ні)
        segment: Сегмент оцінювання
        window: d (визначає першу валідну мітку)
        horizon: h
    """
    timestamps = valid_timestamps(segment, window, horizon)
    if timestamps.size == 0:
        raise SplitError(f"{segment.name} segment has no valid timestamps for d={window}, h={horizon}")
    values = series.denormalize(series.values)
    return EvalPair(values[timestamps].T, values[timestamps + horizon].T)


def safe_metric(metric, pair: EvalPair):
    """Значення метрики або None, якщо вона невизначена (вироджені мітки)"""
    try:
        return metric(pair)
    except MetricError:
        return None
