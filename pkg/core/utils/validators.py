# ==================== utils/validators.py ====================

from typing import Any, Sequence

import numpy as np

from .exceptions import ValidationError


class Validators:
    """Валідатори для матриць та параметрів експерименту"""

    @staticmethod
    def as_matrix(value: Any, name: str = "matrix") -> np.ndarray:
        """
        Приведення зовнішніх даних до 2-D float64 матриці

        Args:
            value: Скаляр, вектор або матриця
            name: Ім'я для повідомлення про помилку

        Returns:
            np.ndarray: Матриця rows x cols

        Raises:
            ValidationError: якщо більше двох вимірів або є NaN/Inf
        """
        array = np.array(value, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        elif array.ndim == 1:
            array = array.reshape(1, -1)
        elif array.ndim > 2:
            raise ValidationError(f"{name}: expected at most 2 dimensions, got {array.ndim}")
        if not np.all(np.isfinite(array)):
            raise ValidationError(f"{name}: contains NaN or Inf")
        return array

    @staticmethod
    def require_positive(value: float, name: str) -> float:
        if not value > 0:
            raise ValidationError(f"{name} must be > 0, got {value}")
        return value

    @staticmethod
    def check_fractions(fractions: Sequence[float], tolerance: float = 1e-9) -> None:
        """
        Перевірка часток поділу датасету

        Raises:
            ValidationError: якщо частки від'ємні або не дають у сумі 1
        """
        if any(f < 0 for f in fractions):
            raise ValidationError(f"split fractions must be non-negative: {tuple(fractions)}")
        if abs(sum(fractions) - 1.0) > tolerance:
            raise ValidationError(f"split fractions must sum to 1: {tuple(fractions)}")
