"""
Series Loading
Завантаження матриць спостережень у форматі LSTNet та нормалізація
"""

import gzip
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from core.utils.exceptions import DataFormatError, NormalizationError, ValidationError
from core.utils.logger import get_logger


logger = get_logger(__name__)

GZIP_MAGIC = b"\x1f\x8b"
NORMALIZATION_SCHEMES = ("max", "none")


@dataclass(frozen=True)
class SeriesMatrix:
    """
    Матриця T x n (рядки - часові мітки в хронологічному порядку, колонки - змінні)
    з масштабами для денормалізації
    """
    values: np.ndarray
    scalers: np.ndarray
    scheme: str = "none"

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        scalers = np.array(self.scalers, dtype=np.float64).reshape(-1)
        if values.ndim != 2:
            raise ValidationError(f"series must be 2-D, got shape {values.shape}")
        if scalers.shape != (values.shape[1],):
            raise ValidationError(f"expected {values.shape[1]} scalers, got {scalers.shape[0]}")
        values.setflags(write=False)
        scalers.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "scalers", scalers)

    @property
    def timestamps(self) -> int:
        return self.values.shape[0]

    @property
    def variables(self) -> int:
        return self.values.shape[1]

    def denormalize(self, values: np.ndarray, axis: int = 1) -> np.ndarray:
        """
        Повернення до вихідного масштабу

        Args:
            values: Матриця у нормалізованому просторі
            axis: Вісь змінних (1 для T x n, 0 для n x M)
        """
        shape = [1, 1]
        shape[axis] = -1
        return np.asarray(values, dtype=np.float64) * self.scalers.reshape(shape)


def _read_text(path: Path) -> str:
    raw = path.read_bytes()
    if raw[:2] == GZIP_MAGIC:
        raw = gzip.decompress(raw)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DataFormatError(f"not valid UTF-8: {e}", path=str(path)) from e


def load_matrix(path: Union[str, Path]) -> SeriesMatrix:
    """
    Завантаження датасету: один рядок на часову мітку, значення через кому,
    можливо стиснутий gzip (визначається за magic bytes)

    Args:
        path: Шлях до файлу

    Returns:
        SeriesMatrix: Ненормалізована матриця (масштаби = 1)

    Raises:
        DataFormatError: порожній файл, рядки різної довжини, нечислові поля
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError("dataset file not found", path=str(path))

    lines = _read_text(path).rstrip("\r\n").splitlines()
    if not lines or not lines[0].strip():
        raise DataFormatError("empty file", path=str(path))

    width = None
    rows = []
    for line_no, line in enumerate(lines, start=1):
        fields = line.strip().split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataFormatError(
                f"expected {width} fields, got {len(fields)}", path=str(path), line=line_no
            )
        try:
            row = [float(f) for f in fields]
        except ValueError as e:
            raise DataFormatError(f"unparsable field: {e}", path=str(path), line=line_no) from e
        if not all(np.isfinite(row)):
            raise DataFormatError("NaN or Inf value", path=str(path), line=line_no)
        rows.append(row)

    values = np.array(rows, dtype=np.float64)
    logger.info(f"Loaded {path.name}: T={values.shape[0]}, n={values.shape[1]}")
    return SeriesMatrix(values, np.ones(values.shape[1]), scheme="none")


def normalize(raw: SeriesMatrix, scheme: str = "max") -> SeriesMatrix:
    """
    Нормалізація по колонках

    Args:
        raw: Ненормалізована матриця
        scheme: "max" - ділення на max|x| колонки, "none" - без змін

    Returns:
        SeriesMatrix: Нормалізована матриця із збереженими масштабами

    Raises:
        NormalizationError: колонка з нулів при scheme="max"
    """
    if scheme not in NORMALIZATION_SCHEMES:
        raise NormalizationError(f"unknown normalization scheme: {scheme}")

    values = raw.denormalize(raw.values)
    if scheme == "none":
        return SeriesMatrix(values, np.ones(raw.variables), scheme="none")

    scalers = np.max(np.abs(values), axis=0)
    zero = np.flatnonzero(scalers == 0)
    if zero.size:
        raise NormalizationError(f"column {int(zero[0])} is all zeros", column=int(zero[0]))

    logger.debug(f"Max-normalization scalers: min={scalers.min():.4g}, max={scalers.max():.4g}")
    return SeriesMatrix(values / scalers, scalers, scheme="max")
