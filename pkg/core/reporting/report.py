"""
Forecast Reports
Звіт запуску та зведення сітки у YAML (стабільні імена ключів, читання без втрат)
"""

import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator

from core.utils.exceptions import ReportError
from core.utils.logger import get_logger


logger = get_logger(__name__)

STATUS_OK = "ok"
STATUS_FAILED = "failed"


class SplitMetrics(BaseModel):
    """Метрики одного сегмента; None - метрика невизначена (нульова дисперсія міток)"""
    rrse: Optional[float] = None
    corr: Optional[float] = None
    mae: Optional[float] = None


class EpochRecord(BaseModel):
    epoch: int
    train_loss: float
    train_mae: float
    valid_rrse: Optional[float] = None
    valid_corr: Optional[float] = None
    valid_mae: Optional[float] = None


class ForecastReport(BaseModel):
    """
    Результат одного навчання та оцінювання

    rrse / corr - тестові метрики найкращої за валідацією моделі;
    baseline - наївний прогноз останнім значенням на тому ж тестовому сегменті.
    """
    status: str = STATUS_OK
    error: Optional[str] = None
    dataset: str
    horizon: int
    variant: str
    seed: int
    rrse: Optional[float] = None
    corr: Optional[float] = None
    valid: SplitMetrics = Field(default_factory=SplitMetrics)
    baseline: SplitMetrics = Field(default_factory=SplitMetrics)
    epochs: int = 0
    best_epoch: Optional[int] = None
    history: List[EpochRecord] = Field(default_factory=list)
    test_timestamps: int = 0
    config: Dict[str, Any] = Field(default_factory=dict)
    config_hash: str = ""
    checkpoint: Optional[str] = None
    wall_clock_seconds: float = 0.0

    @field_validator("rrse", "corr")
    @classmethod
    def _finite(cls, value: Optional[float], info) -> Optional[float]:
        if value is not None and not math.isfinite(value):
            raise ValueError(f"{info.field_name} must be finite or null")
        return value

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


class SweepRow(BaseModel):
    horizon: int
    k: int
    neighbors: int
    rrse: Optional[float] = None
    corr: Optional[float] = None
    status: str = STATUS_OK
    report: Optional[str] = None
    error: Optional[str] = None


class SweepSummary(BaseModel):
    dataset: str
    seed: int
    rows: List[SweepRow] = Field(default_factory=list)

    def sorted_rows(self) -> List[SweepRow]:
        """Рядки за зростанням rrse; невдалі та невизначені - в кінці"""
        return sorted(
            self.rows,
            key=lambda row: (row.rrse is None, row.rrse if row.rrse is not None else 0.0),
        )

    def best(self) -> Optional[SweepRow]:
        rows = [row for row in self.sorted_rows() if row.rrse is not None]
        return rows[0] if rows else None


def _dump(path: Path, data: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(data, f, sort_keys=False, allow_unicode=True, default_flow_style=False)
    except OSError as e:
        raise ReportError(f"Failed to write {path}: {e}") from e
    return path


def _load(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ReportError(f"Failed to read {path}: {e}") from e
    if not isinstance(data, dict):
        raise ReportError(f"{path} is not a key-value document")
    return data


def write_report(report: ForecastReport, path: Union[str, Path]) -> Path:
    """
    Запис звіту

    Args:
        report: Звіт
        path: Файл (UTF-8 YAML)

    Returns:
        Path: Шлях до файлу
    """
    path = _dump(Path(path), report.model_dump(mode="json"))
    logger.info(f"Report written: {path}")
    return path


def read_report(path: Union[str, Path]) -> ForecastReport:
    """
    Читання звіту, записаного write_report

    Raises:
        ReportError: файл відсутній або не відповідає схемі
    """
    path = Path(path)
    try:
        return ForecastReport(**_load(path))
    except PydanticValidationError as e:
        raise ReportError(f"Invalid report {path}: {e}") from e


def write_sweep_summary(summary: SweepSummary, path: Union[str, Path]) -> Path:
    data = summary.model_dump(mode="json")
    data["rows"] = [row.model_dump(mode="json") for row in summary.sorted_rows()]
    path = _dump(Path(path), data)
    logger.info(f"Sweep summary written: {path} ({len(summary.rows)} cells)")
    return path


def read_sweep_summary(path: Union[str, Path]) -> SweepSummary:
    path = Path(path)
    try:
        return SweepSummary(**_load(path))
    except PydanticValidationError as e:
        raise ReportError(f"Invalid sweep summary {path}: {e}") from e


def format_summary_table(summary: SweepSummary) -> str:
    """Текстова таблиця (h, k, N, rrse, corr) для консолі"""
    lines = [f"{'h':>4} {'k':>4} {'N':>4} {'rrse':>10} {'corr':>10}  status"]
    for row in summary.sorted_rows():
        rrse = f"{row.rrse:.4f}" if row.rrse is not None else "-"
        corr = f"{row.corr:.4f}" if row.corr is not None else "-"
        lines.append(f"{row.horizon:>4} {row.k:>4} {row.neighbors:>4} {rrse:>10} {corr:>10}  {row.status}")
    return "\n".join(lines)
