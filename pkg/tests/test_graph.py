import numpy as np
import pytest

from core.autodiff import InferenceOps, Tape, finite_difference_check
from core.model import MappingParams, aggregate, build_adjacency, dump_adjacency, mask_adjacency, top_n_mask
from core.utils.exceptions import ValidationError


def _cos(a, b):
    return a @ b / (np.linalg.norm(a) * np.linalg.norm(b))


def _adjacency_values(h, e, w_h=None, w_e=None, neighbors=None, mask=None):
    ops = InferenceOps()
    maps = MappingParams(w_h, w_e) if w_h is not None else None
    adjacency = build_adjacency(ops, h, e, maps)
    if neighbors is not None:
        adjacency = mask_adjacency(ops, adjacency, neighbors, mask)
    return ops, adjacency


class TestBuildAdjacency:

    def test_without_maps(self):
        _, adjacency = _adjacency_values(np.array([[1.0, 0.0]]), np.array([[1.0, 0.0], [-1.0, 0.0]]))
        np.testing.assert_allclose(adjacency.weights, [[1.0, -1.0]])

    def test_identity_maps_equal_no_maps(self, rng):
        h = rng.normal(size=(3, 4))
        e = rng.normal(size=(6, 4))
        _, plain = _adjacency_values(h, e)
        _, identity = _adjacency_values(h, e, np.eye(4), np.eye(4))
        np.testing.assert_array_equal(plain.weights, identity.weights)

    def test_matches_pairwise_oracle(self, rng):
        h = rng.normal(size=(3, 4))
        e = rng.normal(size=(6, 4))
        w_h = rng.normal(size=(4, 4))
        w_e = rng.normal(size=(4, 4))
        _, adjacency = _adjacency_values(h, e, w_h, w_e)
        for i in range(3):
            for j in range(6):
                expected = _cos(w_h @ h[i], w_e @ e[j])
                assert abs(adjacency.weights[i, j] - expected) < 1e-10

    def test_weights_bounded(self, rng):
        _, adjacency = _adjacency_values(rng.normal(size=(5, 3)), rng.normal(size=(7, 3)))
        assert np.all(np.abs(adjacency.weights) <= 1.0)


class TestTopNMask:

    def test_keeps_largest(self):
        mask = top_n_mask(np.array([[0.9, 0.1, 0.5]]), 2)
        np.testing.assert_array_equal(mask, [[True, False, True]])

    def test_n_at_least_m_keeps_all(self):
        assert top_n_mask(np.array([[0.2, -0.4]]), 5).all()

    def test_ties_prefer_smaller_column(self):
        mask = top_n_mask(np.array([[0.5, 0.7, 0.5, 0.5]]), 2)
        np.testing.assert_array_equal(mask, [[True, True, False, False]])

    def test_exact_count_per_row(self, rng):
        mask = top_n_mask(rng.normal(size=(5, 40)), 10)
        np.testing.assert_array_equal(mask.sum(axis=1), np.full(5, 10))

    def test_matches_sort_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            rows, cols = int(rng.integers(1, 6)), int(rng.integers(1, 41))
            neighbors = int(rng.integers(1, 12))
            weights = rng.uniform(-1, 1, size=(rows, cols))
            mask = top_n_mask(weights, neighbors)
            for i in range(rows):
                order = sorted(range(cols), key=lambda j: (-weights[i, j], j))[:neighbors]
                assert set(np.flatnonzero(mask[i])) == set(order)

    def test_invalid_n(self):
        with pytest.raises(ValidationError):
            top_n_mask(np.zeros((1, 2)), 0)


class TestAggregate:

    def test_single_neighbor_weight_one(self):
        e = np.array([[3.0, 4.0], [-1.0, 0.0]])
        ops, adjacency = _adjacency_values(np.array([[3.0, 4.0]]), e, neighbors=1)
        np.testing.assert_allclose(aggregate(ops, adjacency), [[3.0, 4.0]])

    def test_two_neighbors_mean(self):
        ops = InferenceOps()
        adjacency = build_adjacency(ops, np.array([[1.0, 1.0]]), np.array([[2.0, 0.0], [0.0, 2.0]]), None)
        # косинуси тут 1/√2, тому одиничні ваги задаються напряму
        adjacency = mask_adjacency(ops, adjacency, 2)
        adjacency = type(adjacency)(np.ones((1, 2)), adjacency.mapped_samples, adjacency.mask, 2)
        np.testing.assert_allclose(aggregate(ops, adjacency), [[1.0, 1.0]])

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            n, m, l = int(rng.integers(1, 5)), int(rng.integers(1, 8)), int(rng.integers(1, 6))
            neighbors = int(rng.integers(1, 5))
            h = rng.normal(size=(n, l))
            e = rng.normal(size=(m, l))
            w_h = rng.normal(size=(l, l))
            w_e = rng.normal(size=(l, l))
            ops, adjacency = _adjacency_values(h, e, w_h, w_e, neighbors=neighbors)
            out = aggregate(ops, adjacency)
            divisor = min(neighbors, m)
            for i in range(n):
                expected = np.zeros(l)
                for j in range(m):
                    if adjacency.mask[i, j]:
                        expected += adjacency.weights[i, j] * (w_e @ e[j])
                np.testing.assert_allclose(out[i], expected / divisor, atol=1e-10)

    def test_full_mask_equals_unmasked(self, rng):
        h = rng.normal(size=(3, 4))
        e = rng.normal(size=(5, 4))
        ops, adjacency = _adjacency_values(h, e, neighbors=5)
        unmasked = (adjacency.weights @ adjacency.mapped_samples) * (1.0 / 5)
        np.testing.assert_array_equal(aggregate(ops, adjacency), unmasked)

    def test_norm_bounded_by_largest_mapped_sample(self, rng):
        h = rng.normal(size=(4, 3))
        e = rng.normal(size=(9, 3))
        w = rng.normal(size=(3, 3))
        ops, adjacency = _adjacency_values(h, e, w, w, neighbors=4)
        out = aggregate(ops, adjacency)
        bound = np.max(np.linalg.norm(e @ w.T, axis=1))
        assert np.all(np.linalg.norm(out, axis=1) <= bound + 1e-12)

    def test_row_permutation_equivariance(self, rng):
        h = rng.normal(size=(4, 3))
        e = rng.normal(size=(6, 3))
        permutation = np.array([2, 0, 3, 1])
        ops, adjacency = _adjacency_values(h, e, neighbors=3)
        ops2, permuted = _adjacency_values(h[permutation], e, neighbors=3)
        np.testing.assert_allclose(aggregate(ops2, permuted), aggregate(ops, adjacency)[permutation], atol=1e-12)

    def test_requires_mask(self, rng):
        ops, adjacency = _adjacency_values(rng.normal(size=(2, 3)), rng.normal(size=(3, 3)))
        with pytest.raises(ValidationError):
            aggregate(ops, adjacency)

    def test_gradients_through_both_mapping_paths(self, rng):
        h = rng.normal(size=(3, 4))
        e = rng.normal(size=(5, 4))
        probe = InferenceOps()
        start = {"h": h, "w_h": rng.normal(size=(4, 4)), "w_e": rng.normal(size=(4, 4))}
        mask = mask_adjacency(
            probe,
            build_adjacency(probe, h, e, MappingParams(start["w_h"], start["w_e"])),
            2,
        ).mask

        def fn(ops, p):
            adjacency = build_adjacency(ops, p["h"], ops.constant(e), MappingParams(p["w_h"], p["w_e"]))
            adjacency = mask_adjacency(ops, adjacency, 2, mask)
            out = aggregate(ops, adjacency)
            return ops.sum(ops.multiply(out, out))

        result = finite_difference_check(fn, start)
        assert result.passed(1e-4), result

    def test_mapped_samples_shared_between_weights_and_messages(self, rng):
        tape = Tape()
        w_e = tape.parameter("w_e", rng.normal(size=(3, 3)))
        w_h = tape.parameter("w_h", rng.normal(size=(3, 3)))
        adjacency = build_adjacency(
            tape, tape.constant(rng.normal(size=(2, 3))), tape.constant(rng.normal(size=(4, 3))),
            MappingParams(w_h, w_e),
        )
        weights_node = tape.nodes[adjacency.weights]
        assert adjacency.mapped_samples in weights_node.input_ids


def test_dump_adjacency_layout(tmp_path):
    weights = np.array([[0.5, -0.25], [1.0, 0.0]])
    mask = np.array([[True, False], [True, True]])
    path = dump_adjacency(tmp_path / "adj" / "dump.txt", weights, mask)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# weights 2x2"
    assert lines[1:3] == ["0.5,-0.25", "1,0"]
    assert lines[3:6] == ["", "# mask", "1,0"]
    assert lines[6] == "1,1"
