"""
Experiment Service
Повний запуск (дані -> навчання -> тест -> звіт) та сітки за h / k / N
"""

import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.config.run_config import RunConfig
from core.data.datasets import check_known_shape, resolve_dataset_path
from core.data.series import SeriesMatrix, load_matrix, normalize
from core.data.splits import SplitSpec, split_chronological
from core.metrics.metrics import corr, naive_baseline, rrse, safe_metric
from core.model.checkpoint import save_checkpoint
from core.model.graph import dump_adjacency
from core.reporting.report import (
    STATUS_FAILED, EpochRecord, ForecastReport, SplitMetrics, SweepRow, SweepSummary,
    format_summary_table, write_report, write_sweep_summary,
)
from core.tasks.task_manager import TaskManager
from core.training.trainer import Trainer, TrainResult
from core.utils.hasher import Hasher
from core.utils.logger import get_logger


logger = get_logger(__name__)

ProgressCallback = Callable[[int, str], None]

# Поля, що не впливають на результат і не входять у відбиток конфігурації
OUTPUT_KEYS = {"out", "checkpoint", "dump_adjacency", "bank_workers", "eval_workers", "data_dir"}


def config_hash(config: RunConfig) -> str:
    echo = {key: value for key, value in config.echo().items() if key not in OUTPUT_KEYS}
    return Hasher.config_fingerprint(echo)


def cell_report_path(summary_path: Path, horizon: int, k: int, neighbors: int) -> Path:
    return summary_path.with_name(f"{summary_path.stem}_h{horizon}_k{k}_n{neighbors}.yaml")


def run_cell(config_data: Dict[str, Any]) -> Dict[str, Any]:
    """Одна клітинка сітки (верхній рівень модуля, щоб передаватися у процеси)"""
    config = RunConfig(**config_data)
    logger.info(f"Sweep cell started: h={config.horizon}, k={config.k}, N={config.neighbors}")
    report = ExperimentService().run(config)
    return report.model_dump(mode="json")


class ExperimentService:
    """
    Сервіс експериментів

    Один запуск:
    - Завантаження та нормалізація датасету
    - Хронологічний поділ
    - Навчання з вибором моделі за валідацією
    - Тестові метрики, наївний базовий прогноз, звіт, контрольна точка
    """

    def load_series(self, config: RunConfig) -> SeriesMatrix:
        path = resolve_dataset_path(config.data, config.data_dir)
        raw = load_matrix(path)
        check_known_shape(config.dataset_name, raw)
        return normalize(raw, config.normalize)

    def split(self, config: RunConfig, series: SeriesMatrix) -> SplitSpec:
        return split_chronological(
            series.timestamps, config.fractions, min_length=config.window + config.horizon
        )

    def run(
        self,
        config: RunConfig,
        progress_callback: Optional[ProgressCallback] = None,
        series: Optional[SeriesMatrix] = None,
    ) -> ForecastReport:
        """
        Навчання та оцінювання з записом звіту у config.out

        Args:
            config: Конфігурація запуску
            progress_callback: Прогрес по епохах
            series: Готова нормалізована матриця (інакше - завантаження з config.data)

        Returns:
            ForecastReport: Записаний звіт
        """
        started = time.perf_counter()
        if series is None:
            series = self.load_series(config)
        split = self.split(config, series)
        logger.info(
            f"Run started: data={config.data}, T={series.timestamps}, n={series.variables}, "
            f"train={len(split.train)}, valid={len(split.valid)}, test={len(split.test)}"
        )

        trainer = Trainer(config.to_train_config(), split)
        result = trainer.train(series, progress_callback=progress_callback)
        test = trainer.evaluate(series, split.test, result.params, result.bank)
        baseline = naive_baseline(series, split.test, config.window, config.horizon)

        checkpoint = None
        if config.checkpoint:
            checkpoint = str(save_checkpoint(
                config.checkpoint,
                result.params,
                {"config_hash": config_hash(config), "best_epoch": result.best_epoch, "variant": config.variant.value},
            ))
        if config.dump_adjacency:
            first = trainer.forward_at(series, int(test.timestamps[0]), result.params, result.bank)
            dump_adjacency(config.dump_adjacency, first.adjacency.weights, first.adjacency.mask)

        report = self._build_report(config, result, test, baseline, checkpoint, time.perf_counter() - started)
        write_report(report, config.out)
        logger.info(
            f"Run finished: rrse={report.rrse}, corr={report.corr}, "
            f"baseline_rrse={report.baseline.rrse}, seconds={report.wall_clock_seconds:.1f}"
        )
        return report

    def _build_report(self, config, result: TrainResult, test, baseline, checkpoint, seconds) -> ForecastReport:
        best = result.history[result.best_epoch - 1]
        return ForecastReport(
            dataset=config.data,
            horizon=config.horizon,
            variant=config.variant.value,
            seed=config.seed,
            rrse=test.rrse,
            corr=test.corr,
            valid=SplitMetrics(rrse=best.valid_rrse, corr=best.valid_corr, mae=best.valid_mae),
            baseline=SplitMetrics(rrse=safe_metric(rrse, baseline), corr=safe_metric(corr, baseline)),
            epochs=result.epochs_run,
            best_epoch=result.best_epoch,
            history=[EpochRecord(**vars(stats)) for stats in result.history],
            test_timestamps=int(test.timestamps.size),
            config=config.echo(),
            config_hash=config_hash(config),
            checkpoint=checkpoint,
            wall_clock_seconds=seconds,
        )

    def sweep_cells(self, config: RunConfig) -> List[RunConfig]:
        summary_path = Path(config.out)
        cells = []
        for horizon in config.sweep_h or [config.horizon]:
            # k та N без сітки та без явного значення - з таблиці датасету для цього горизонту
            defaults = config.table_defaults(horizon)
            for k in config.sweep_k or [defaults.get("k", config.k)]:
                for neighbors in config.sweep_n or [defaults.get("neighbors", config.neighbors)]:
                    out = cell_report_path(summary_path, horizon, k, neighbors)
                    cells.append(config.cell(horizon, k, neighbors, str(out)))
        return cells

    def sweep(self, config: RunConfig, progress_callback: Optional[ProgressCallback] = None) -> SweepSummary:
        """
        Сітка h x k x N з однаковим seed; config.out - файл зведення,
        звіти клітинок пишуться поруч (<stem>_h{h}_k{k}_n{N}.yaml)

        Помилка клітинки записується у зведення, решта сітки продовжується.
        """
        cells = self.sweep_cells(config)
        logger.info(f"Sweep started: {len(cells)} cells, workers={config.sweep_workers}")

        def on_error(exc_info: Tuple) -> None:
            logger.error(f"Sweep cell failed: {exc_info[1]}")

        manager = TaskManager(max_workers=config.sweep_workers, use_processes=config.sweep_workers > 1)
        results = manager.map(
            run_cell,
            [cell.model_dump(mode="json") for cell in cells],
            on_error=on_error,
            on_progress=progress_callback,
        )

        summary = SweepSummary(dataset=config.data, seed=config.seed)
        for cell, result in zip(cells, results):
            row = SweepRow(horizon=cell.horizon, k=cell.k, neighbors=cell.neighbors, report=cell.out)
            if result.ok:
                row.rrse = result.value["rrse"]
                row.corr = result.value["corr"]
            else:
                row.status = STATUS_FAILED
                row.error = f"{type(result.error).__name__}: {result.error}"
                row.report = None
            summary.rows.append(row)

        write_sweep_summary(summary, config.out)
        logger.info(f"Sweep finished:\n{format_summary_table(summary)}")
        return summary
