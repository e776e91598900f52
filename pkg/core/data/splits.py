"""
Chronological Split
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from core.utils.exceptions import SplitError, ValidationError
from core.utils.validators import Validators


DEFAULT_FRACTIONS: Tuple[float, float, float] = (0.6, 0.2, 0.2)


@dataclass(frozen=True)
class Segment:
    """Напіввідкритий інтервал часових міток [start, end)"""
    name: str
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start

    def __contains__(self, index: int) -> bool:
        return self.start <= index < self.end


@dataclass(frozen=True)
class SplitSpec:
    total: int
    train_end: int
    valid_end: int
    fractions: Tuple[float, float, float] = DEFAULT_FRACTIONS

    @property
    def train(self) -> Segment:
        return Segment("train", 0, self.train_end)

    @property
    def valid(self) -> Segment:
        return Segment("valid", self.train_end, self.valid_end)

    @property
    def test(self) -> Segment:
        return Segment("test", self.valid_end, self.total)

    def segment(self, name: str) -> Segment:
        if name not in ("train", "valid", "test"):
            raise SplitError(f"unknown split segment: {name}")
        return getattr(self, name)


def split_chronological(
    total: int,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    min_length: int = 1,
) -> SplitSpec:
    """
    Поділ [0, T) на train/valid/test за частками floor(f*T)

    Args:
        total: Кількість часових міток T
        fractions: Частки (train, valid, test), сума = 1
        min_length: Мінімальна довжина кожного сегмента (зазвичай d + h)

    Returns:
        SplitSpec: Межі сегментів

    Raises:
        SplitError: некоректні частки або закороткий сегмент
    """
    if len(fractions) != 3:
        raise SplitError(f"expected three fractions, got {len(fractions)}")
    try:
        Validators.check_fractions(fractions)
    except ValidationError as e:
        raise SplitError(str(e)) from e

    # 1e-9 поглинає похибку двійкового представлення часток
    train_end = math.floor(fractions[0] * total + 1e-9)
    valid_end = math.floor((fractions[0] + fractions[1]) * total + 1e-9)
    spec = SplitSpec(total, train_end, valid_end, tuple(float(f) for f in fractions))

    for segment in (spec.train, spec.valid, spec.test):
        if len(segment) < max(min_length, 1):
            raise SplitError(
                f"{segment.name} segment [{segment.start}, {segment.end}) is shorter than {max(min_length, 1)}"
            )
    return spec
