"""
Trainer
Цикл навчання (банк -> перемішані пакети -> Adam) та хронологічне оцінювання
"""

import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from core.autodiff.optim import AdamState, adam_step
from core.autodiff.tape import InferenceOps, Tape
from core.config.train_config import TrainConfig
from core.data.batches import batch_iter, make_batch, valid_timestamps
from core.data.series import SeriesMatrix
from core.data.splits import Segment, SplitSpec
from core.metrics.metrics import EvalPair, corr, mae, rrse, safe_metric
from core.model.encoder import EmbeddingBank, build_bank
from core.model.forecaster import ForwardResult, IGMTFNetwork, loss
from core.model.params import ModelParams
from core.tasks.task_manager import TaskManager
from core.utils.exceptions import SplitError, TrainingError
from core.utils.logger import get_logger


logger = get_logger(__name__)

ProgressCallback = Callable[[int, str], None]

# Міток на одне завдання паралельного оцінювання
EVAL_CHUNK = 32


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    train_loss: float
    train_mae: float
    valid_rrse: Optional[float]
    valid_corr: Optional[float]
    valid_mae: float


@dataclass(frozen=True)
class EvalResult:
    """Денормалізовані прогнози та мітки n x M для міток timestamps"""
    pair: EvalPair
    timestamps: np.ndarray

    @property
    def rrse(self) -> Optional[float]:
        return safe_metric(rrse, self.pair)

    @property
    def corr(self) -> Optional[float]:
        return safe_metric(corr, self.pair)

    @property
    def mae(self) -> float:
        return mae(self.pair)


@dataclass
class TrainResult:
    """Параметри з найкращою валідацією, банк для них та історія епох"""
    params: ModelParams
    bank: EmbeddingBank
    best_epoch: int
    history: List[EpochStats] = field(default_factory=list)
    final_params: Optional[ModelParams] = None
    seconds: float = 0.0

    @property
    def epochs_run(self) -> int:
        return len(self.history)


def _selection_key(stats: EpochStats) -> Tuple[int, float]:
    # RRSE, якщо визначений; інакше MAE
    if stats.valid_rrse is not None:
        return (0, stats.valid_rrse)
    return (1, stats.valid_mae)


class Trainer:
    """
    Навчання однієї моделі для одного горизонту

    Банк ембеддингів перебудовується раз на епоху; банк, побудований для валідації
    після епохи, стає банком наступної епохи (параметри між ними не змінюються).
    """

    def __init__(self, config: TrainConfig, split: SplitSpec):
        self.config = config
        self.split = split
        self.network = IGMTFNetwork(config.k, config.neighbors, config.variant, config.exclude_self)

    def initial_params(self) -> ModelParams:
        return ModelParams.initialize(
            self.config.hidden, use_maps=self.config.variant.uses_maps, seed=self.config.seed
        )

    def build_bank(self, series: SeriesMatrix, params: ModelParams, epoch: int = 0) -> EmbeddingBank:
        return build_bank(
            series,
            self.split.train,
            params,
            self.config.window,
            self.config.horizon,
            epoch=epoch,
            chunk=self.config.bank_chunk,
            workers=self.config.bank_workers,
        )

    def train_step(
        self,
        series: SeriesMatrix,
        timestamp: int,
        params: ModelParams,
        state: AdamState,
        bank: EmbeddingBank,
        rng: np.random.Generator,
        epoch: int = 0,
    ) -> Tuple[ModelParams, AdamState, float, float]:
        """
        Один міні-батч: прямий прохід на стрічці, втрата, зворотний прохід, крок Adam

        Returns:
            Tuple: (нові параметри, новий стан, втрата, MAE)

        Raises:
            TrainingError: втрата не скінченна
        """
        config = self.config
        batch = make_batch(series, timestamp, config.window, config.horizon)
        tape = Tape()
        model = params.bind(tape)
        result = self.network.forward(tape, model, batch, bank, rng)
        terms = loss(tape, result.predictions, batch.labels, model, config.l2)

        total = float(tape.value(terms.total)[0, 0])
        batch_mae = float(tape.value(terms.mae)[0, 0])
        if not np.isfinite(total):
            raise TrainingError(f"loss is {total}", epoch=epoch, timestamp=timestamp)

        grads = tape.backward(terms.total)
        tensors, state = adam_step(params.tensors, grads, state, config.lr)
        logger.debug(f"Epoch {epoch} t={timestamp}: loss={total:.6f}, mae={batch_mae:.6f}, tape={len(tape)}")
        return params.replace(tensors), state, total, batch_mae

    def train(
        self,
        series: SeriesMatrix,
        params: Optional[ModelParams] = None,
        progress_callback: Optional[ProgressCallback] = None,
    ) -> TrainResult:
        """
        Навчання до ліміту епох або вичерпання терпіння

        Args:
            series: Нормалізована матриця
            params: Початкові параметри (інакше ініціалізація з seed)
            progress_callback: (відсоток, повідомлення) після кожної епохи

        Returns:
            TrainResult: Найкращі за валідацією параметри

        Raises:
            TrainingError: NaN/Inf у втраті
            SplitError: сегмент без валідних міток
        """
        config = self.config
        started = time.perf_counter()
        rng = np.random.default_rng(config.seed)
        params = params.copy() if params is not None else self.initial_params()
        state = AdamState.zeros_like(params.tensors)
        bank = self.build_bank(series, params, epoch=0)

        history: List[EpochStats] = []
        best: Optional[Tuple[EpochStats, ModelParams, EmbeddingBank]] = None
        stale = 0

        logger.info(
            f"Training started: variant={config.variant.value}, d={config.window}, h={config.horizon}, "
            f"l={config.hidden}, k={config.k}, N={config.neighbors}, lr={config.lr}, epochs={config.epochs}"
        )
        for epoch in range(1, config.epochs + 1):
            losses = []
            maes = []
            for batch in batch_iter(series, self.split.train, config.window, config.horizon, shuffle=True, rng=rng):
                params, state, total, batch_mae = self.train_step(
                    series, batch.timestamp, params, state, bank, rng, epoch
                )
                losses.append(total)
                maes.append(batch_mae)

            bank = self.build_bank(series, params, epoch=epoch)
            valid = self.evaluate(series, self.split.valid, params, bank)
            stats = EpochStats(
                epoch=epoch,
                train_loss=float(np.mean(losses)),
                train_mae=float(np.mean(maes)),
                valid_rrse=valid.rrse,
                valid_corr=valid.corr,
                valid_mae=valid.mae,
            )
            history.append(stats)
            logger.info(
                f"Epoch {epoch}/{config.epochs} finished: train_loss={stats.train_loss:.6f}, "
                f"train_mae={stats.train_mae:.6f}, valid_rrse={stats.valid_rrse}, valid_mae={stats.valid_mae:.6f}"
            )

            if best is None or _selection_key(stats) < _selection_key(best[0]):
                best = (stats, params, bank)
                stale = 0
            else:
                stale += 1

            if progress_callback:
                progress_callback(int(epoch / config.epochs * 100), f"Epoch {epoch}/{config.epochs}")

            if config.patience is not None and stale >= config.patience:
                logger.info(f"Early stopping at epoch {epoch}: no improvement for {stale} epochs")
                break

        best_stats, best_params, best_bank = best
        seconds = time.perf_counter() - started
        logger.info(f"Training finished in {seconds:.1f}s, best epoch {best_stats.epoch}")
        return TrainResult(
            params=best_params,
            bank=best_bank,
            best_epoch=best_stats.epoch,
            history=history,
            final_params=params,
            seconds=seconds,
        )

    def forward_at(
        self,
        series: SeriesMatrix,
        timestamp: int,
        params: ModelParams,
        bank: EmbeddingBank,
    ) -> ForwardResult:
        """Прямий прохід без стрічки для однієї мітки (оцінювання, дамп суміжності)"""
        ops = InferenceOps()
        batch = make_batch(series, timestamp, self.config.window, self.config.horizon)
        # окремий генератор на мітку: результат не залежить від порядку та паралелізму
        rng = np.random.default_rng([self.config.seed, int(timestamp)])
        return self.network.forward(ops, params.bind(ops), batch, bank, rng)

    def evaluate(
        self,
        series: SeriesMatrix,
        segment: Segment,
        params: ModelParams,
        bank: Optional[EmbeddingBank] = None,
    ) -> EvalResult:
        """
        Хронологічне оцінювання сегмента, по одному пакету на мітку

        Args:
            series: Нормалізована матриця
            segment: Сегмент (valid або test)
            params: Параметри (лише читаються)
            bank: Банк тренувальних ембеддингів для цих параметрів (будується, якщо None)

        Returns:
            EvalResult: Денормалізовані прогнози та мітки n x M
        """
        config = self.config
        timestamps = valid_timestamps(segment, config.window, config.horizon)
        if timestamps.size == 0:
            raise SplitError(
                f"{segment.name} segment has no valid timestamps for d={config.window}, h={config.horizon}"
            )
        if bank is None:
            bank = self.build_bank(series, params)

        predictions = np.empty((series.variables, timestamps.size), dtype=np.float64)

        def evaluate_chunk(start: int) -> int:
            for column in range(start, min(start + EVAL_CHUNK, timestamps.size)):
                result = self.forward_at(series, int(timestamps[column]), params, bank)
                predictions[:, column] = result.predictions[:, 0]
            return start

        starts = range(0, timestamps.size, EVAL_CHUNK)
        for task in TaskManager(max_workers=config.eval_workers).map(evaluate_chunk, starts):
            if not task.ok:
                raise task.error

        labels = series.values[timestamps + config.horizon].T
        pair = EvalPair(series.denormalize(predictions, axis=0), series.denormalize(labels, axis=0))
        return EvalResult(pair, timestamps)
