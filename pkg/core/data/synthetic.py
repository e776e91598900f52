"""
Synthetic Series
Генератори невеликих датасетів для тестів і смоук-запусків
"""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from core.data.series import SeriesMatrix


def sinusoid_mixture(
    timestamps: int = 400,
    variables: int = 4,
    seed: int = 0,
    periods: Optional[Sequence[float]] = None,
    noise: float = 0.0,
) -> SeriesMatrix:
    """
    Суміш синусоїд: кожна змінна - сума двох гармонік зі своєю фазою та зсувом (> 0)

    Args:
        timestamps: Кількість міток T
        variables: Кількість змінних n
        seed: Seed фаз і амплітуд
        periods: Періоди базових гармонік (за замовчуванням 24 та 12)
        noise: Стандартне відхилення гаусового шуму
    """
    rng = np.random.default_rng(seed)
    periods = tuple(periods) if periods is not None else (24.0, 12.0)
    t = np.arange(timestamps, dtype=np.float64)[:, None]
    values = np.full((timestamps, variables), 2.0)
    for period in periods:
        phase = rng.uniform(0.0, 2.0 * np.pi, size=variables)
        amplitude = rng.uniform(0.3, 1.0, size=variables)
        values += amplitude * np.sin(2.0 * np.pi * t / period + phase)
    if noise > 0:
        values += rng.normal(0.0, noise, size=values.shape)
    return SeriesMatrix(values, np.ones(variables))


def constant_series(timestamps: int = 120, variables: int = 3, level: float = 1.0) -> SeriesMatrix:
    return SeriesMatrix(np.full((timestamps, variables), level), np.ones(variables))


def linear_ramp(timestamps: int = 60, variables: int = 1) -> SeriesMatrix:
    """x[t, i] = t"""
    values = np.repeat(np.arange(timestamps, dtype=np.float64)[:, None], variables, axis=1)
    return SeriesMatrix(values, np.ones(variables))


def random_walk(timestamps: int = 200, variables: int = 3, seed: int = 0) -> SeriesMatrix:
    rng = np.random.default_rng(seed)
    steps = rng.normal(0.0, 1.0, size=(timestamps, variables))
    return SeriesMatrix(10.0 + np.cumsum(steps, axis=0), np.ones(variables))


def write_series(series: SeriesMatrix, path: Union[str, Path]) -> Path:
    """Запис у текстовому форматі датасетів (через кому, рядок на мітку)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, series.denormalize(series.values), delimiter=",", fmt="%.17g")
    return path
