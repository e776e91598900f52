"""
Forecasting Module
Вихідний шар, функція втрат та повний прямий прохід для одного міні-батчу
"""

from dataclasses import dataclass
from typing import Any, Optional, Union

import numpy as np

from core.config.train_config import Variant
from core.data.batches import InstanceBatch
from core.model.encoder import EmbeddingBank, EncodeMode, encode_batch
from core.model.graph import Adjacency, aggregate, build_adjacency, mask_adjacency
from core.model.params import BoundModel, HeadParams
from core.model.sampler import SampleSelection, batch_mean, select_random, select_top_k


def predict(ops, aggregated, embeddings, head: HeadParams):
    """p_i = Linear(Concat(ĥ_i, h_i)); порядок конкатенації фіксований"""
    return ops.add(ops.matmul(ops.concat_cols(aggregated, embeddings), head.weight), head.bias)


@dataclass(frozen=True)
class LossTerms:
    total: Any
    mae: Any


def loss(ops, predictions, labels, model: BoundModel, l2: float) -> LossTerms:
    """
    mean|p - y| + λ Σ_Θ θ²

    Args:
        predictions: n x 1
        labels: n x 1 (масив або посилання)
        model: Прив'язані параметри (Θ)
        l2: λ >= 0
    """
    if isinstance(labels, np.ndarray):
        labels = ops.constant(labels)
    mae = ops.mean_all(ops.abs(ops.subtract(predictions, labels)))
    if l2 == 0:
        return LossTerms(mae, mae)
    penalty = None
    for ref in model.refs.values():
        term = ops.sum(ops.multiply(ref, ref))
        penalty = term if penalty is None else ops.add(penalty, term)
    return LossTerms(ops.add(mae, ops.scale(penalty, l2)), mae)


@dataclass(frozen=True)
class ForwardResult:
    predictions: Any
    embeddings: Any
    aggregated: Any
    selection: SampleSelection
    adjacency: Adjacency


class IGMTFNetwork:
    """
    Прямий прохід для міні-батчу однієї часової мітки:
    кодування -> семплер -> граф інстансів -> маска top-N -> агрегація -> прогноз
    """

    def __init__(self, k: int, neighbors: int, variant: Variant = Variant.FULL, exclude_self: bool = False):
        self.k = int(k)
        self.neighbors = int(neighbors)
        self.variant = Variant(variant)
        self.exclude_self = exclude_self

    def sample(
        self,
        bank: EmbeddingBank,
        mean_embedding: np.ndarray,
        rng: Union[np.random.Generator, int, None],
        timestamp: Optional[int] = None,
    ) -> SampleSelection:
        exclude = timestamp if self.exclude_self else None
        if self.variant.uses_similarity_sampler:
            return select_top_k(bank, mean_embedding, self.k, exclude_timestamp=exclude)
        return select_random(bank, self.k, rng, exclude_timestamp=exclude)

    def forward(
        self,
        ops,
        model: BoundModel,
        batch: InstanceBatch,
        bank: EmbeddingBank,
        rng: Union[np.random.Generator, int, None] = None,
        selection: Optional[SampleSelection] = None,
        mask: Optional[np.ndarray] = None,
    ) -> ForwardResult:
        """
        Args:
            ops: Tape (навчання) або InferenceOps (оцінювання)
            model: Прив'язані параметри
            batch: Інстанси мітки t
            bank: Банк ембеддингів тренувальних інстансів
            rng: Генератор для випадкового семплера
            selection: Зафіксований вибір міток (інакше - семплер)
            mask: Зафіксована маска top-N (інакше - за вагами)
        """
        embeddings = encode_batch(ops, model, batch.features, EncodeMode.GRAD)
        if selection is None:
            mean_embedding = ops.value(batch_mean(ops, embeddings))
            selection = self.sample(bank, mean_embedding, rng, batch.timestamp)

        samples = ops.constant(selection.embeddings)
        maps = model.maps if self.variant.uses_maps else None
        adjacency = build_adjacency(ops, embeddings, samples, maps)
        adjacency = mask_adjacency(ops, adjacency, self.neighbors, mask)
        aggregated = aggregate(ops, adjacency)
        predictions = predict(ops, aggregated, embeddings, model.head)
        return ForwardResult(predictions, embeddings, aggregated, selection, adjacency)
