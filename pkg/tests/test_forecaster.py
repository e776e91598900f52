import numpy as np
import pytest

from core.autodiff import InferenceOps, Tape, finite_difference_check
from core.config.train_config import Variant
from core.data.batches import make_batch
from core.model import HeadParams, IGMTFNetwork, ModelParams, assemble, build_bank, loss, predict


def _head(weight, bias):
    return HeadParams(np.asarray(weight, dtype=np.float64), np.asarray(bias, dtype=np.float64))


class TestPredict:

    def test_zero_head_gives_bias(self, rng):
        ops = InferenceOps()
        out = predict(ops, rng.normal(size=(3, 2)), rng.normal(size=(3, 2)), _head(np.zeros((4, 1)), [[0.7]]))
        np.testing.assert_array_equal(out, np.full((3, 1), 0.7))

    def test_averaging_head_on_ones(self):
        ops = InferenceOps()
        out = predict(ops, np.ones((2, 3)), np.ones((2, 3)), _head(np.full((6, 1), 1 / 6), [[0.0]]))
        np.testing.assert_allclose(out, np.ones((2, 1)))

    def test_concat_order_aggregated_first(self, rng):
        aggregated = rng.normal(size=(3, 4))
        embeddings = rng.normal(size=(3, 4))
        weight = rng.normal(size=(8, 1))
        out = predict(InferenceOps(), aggregated, embeddings, _head(weight, [[0.1]]))
        for i in range(3):
            expected = sum(aggregated[i, j] * weight[j, 0] for j in range(4))
            expected += sum(embeddings[i, j] * weight[4 + j, 0] for j in range(4))
            assert abs(out[i, 0] - (expected + 0.1)) < 1e-12


class TestLoss:

    def test_mae_only(self):
        ops = InferenceOps()
        params = ModelParams.initialize(2, seed=0)
        terms = loss(ops, np.array([[1.0], [2.0]]), np.array([[1.0], [4.0]]), params.bind(ops), l2=0.0)
        assert terms.total[0, 0] == 1.0

    def test_perfect_predictions(self):
        ops = InferenceOps()
        params = ModelParams.initialize(2, seed=0)
        y = np.array([[0.3], [0.6]])
        assert loss(ops, y, y, params.bind(ops), l2=0.0).total[0, 0] == 0.0

    def test_l2_term(self):
        ops = InferenceOps()
        tensors = {name: np.zeros_like(v) for name, v in ModelParams.initialize(1, use_maps=False).tensors.items()}
        tensors["head.bias"] = np.array([[2.0]])
        model = ModelParams(tensors, 1, use_maps=False).bind(ops)
        y = np.array([[1.0]])
        terms = loss(ops, y, y, model, l2=0.5)
        assert terms.total[0, 0] == pytest.approx(2.0)
        assert terms.mae[0, 0] == 0.0

    def test_l2_gradient_is_two_lambda_theta(self):
        tape = Tape()
        params = ModelParams.initialize(2, seed=1)
        model = params.bind(tape)
        y = np.zeros((1, 1))
        grads = tape.backward(loss(tape, tape.constant(y), y, model, l2=0.25).total)
        np.testing.assert_allclose(grads["encoder.gru.u_r"], 0.5 * params.tensors["encoder.gru.u_r"])


class TestNetwork:

    def _setup(self, series, split, hidden=4, use_maps=True, seed=0):
        params = ModelParams.initialize(hidden, use_maps=use_maps, seed=seed)
        bank = build_bank(series, split.train, params, window=5, horizon=1)
        return params, bank

    def test_output_shapes(self, small_series, small_split):
        params, bank = self._setup(small_series, small_split)
        network = IGMTFNetwork(k=2, neighbors=2)
        ops = InferenceOps()
        batch = make_batch(small_series, 40, 5, 1)
        result = network.forward(ops, params.bind(ops), batch, bank)
        assert result.predictions.shape == (3, 1)
        assert result.selection.size == 2 * 3
        assert result.adjacency.mask.shape == (3, 6)
        np.testing.assert_array_equal(result.adjacency.mask.sum(axis=1), [2, 2, 2])

    def test_random_variant_changes_only_selection(self, small_series, small_split):
        params, bank = self._setup(small_series, small_split)
        batch = make_batch(small_series, 40, 5, 1)
        ops = InferenceOps()
        full = IGMTFNetwork(2, 2, Variant.FULL).forward(ops, params.bind(ops), batch, bank)
        ns = IGMTFNetwork(2, 2, Variant.NS).forward(ops, params.bind(ops), batch, bank, rng=np.random.default_rng(3))
        assert full.adjacency.weights.shape == ns.adjacency.weights.shape
        np.testing.assert_array_equal(full.embeddings, ns.embeddings)

    def test_no_maps_variant_uses_raw_embeddings(self, small_series, small_split):
        params, bank = self._setup(small_series, small_split, use_maps=False)
        batch = make_batch(small_series, 40, 5, 1)
        ops = InferenceOps()
        result = IGMTFNetwork(2, 2, Variant.NW).forward(ops, params.bind(ops), batch, bank)
        np.testing.assert_array_equal(result.adjacency.mapped_samples, result.selection.embeddings)

    def test_forward_deterministic(self, small_series, small_split):
        params, bank = self._setup(small_series, small_split)
        batch = make_batch(small_series, 45, 5, 1)
        network = IGMTFNetwork(2, 2)
        first = network.forward(InferenceOps(), params.bind(InferenceOps()), batch, bank).predictions
        second = network.forward(InferenceOps(), params.bind(InferenceOps()), batch, bank).predictions
        np.testing.assert_array_equal(first, second)

    def test_exclude_self_drops_batch_timestamp(self, small_series, small_split):
        params, bank = self._setup(small_series, small_split)
        batch = make_batch(small_series, int(bank.timestamps[5]), 5, 1)
        network = IGMTFNetwork(k=len(bank) - 1, neighbors=2, exclude_self=True)
        ops = InferenceOps()
        result = network.forward(ops, params.bind(ops), batch, bank)
        assert batch.timestamp not in result.selection.timestamps

    @pytest.mark.parametrize("variant", [Variant.FULL, Variant.NW])
    def test_end_to_end_gradient_matches_finite_differences(self, small_series, small_split, variant):
        # n=3, d=5, l=4, k=2, N=2; вибір і маска фіксуються пробним проходом
        params, bank = self._setup(small_series, small_split, use_maps=variant.uses_maps, seed=5)
        network = IGMTFNetwork(k=2, neighbors=2, variant=variant)
        batch = make_batch(small_series, 30, 5, 1)
        probe_ops = InferenceOps()
        probe = network.forward(probe_ops, params.bind(probe_ops), batch, bank)

        def fn(ops, refs):
            model = assemble(refs, variant.uses_maps)
            result = network.forward(ops, model, batch, bank, selection=probe.selection, mask=probe.adjacency.mask)
            return loss(ops, result.predictions, batch.labels, model, l2=1e-3).total

        result = finite_difference_check(fn, params.tensors)
        assert result.passed(1e-4), f"max error {result.max_error} at {result.worst}"
