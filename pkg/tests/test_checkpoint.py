import numpy as np
import pytest

from core.model import ModelParams
from core.model.checkpoint import FORMAT_VERSION, PARAM_PREFIX, load_checkpoint, save_checkpoint
from core.utils.exceptions import CheckpointError


class TestCheckpoint:

    def test_save_then_load(self, tmp_path):
        params = ModelParams.initialize(4, seed=3)
        path = save_checkpoint(tmp_path / "ckpt" / "model.npz", params, {"best_epoch": 7, "variant": "full"})
        loaded, metadata = load_checkpoint(path)
        assert loaded.names() == params.names()
        for name in params.names():
            np.testing.assert_array_equal(loaded.tensors[name], params.tensors[name])
        assert metadata["best_epoch"] == 7
        assert metadata["hidden"] == 4 and metadata["use_maps"] is True

    def test_no_maps_variant(self, tmp_path):
        params = ModelParams.initialize(4, use_maps=False, seed=0)
        loaded, _ = load_checkpoint(save_checkpoint(tmp_path / "nw.npz", params))
        assert not loaded.use_maps
        assert "graph.w_e" not in loaded.tensors

    def test_missing_file(self, tmp_path):
        with pytest.raises(CheckpointError, match="not found"):
            load_checkpoint(tmp_path / "absent.npz")

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "old.npz"
        np.savez(path, format_version=np.array(FORMAT_VERSION + 1), metadata=np.array("{}"))
        with pytest.raises(CheckpointError, match="version"):
            load_checkpoint(path)

    def test_missing_tensor(self, tmp_path):
        params = ModelParams.initialize(4, seed=0)
        arrays = {f"{PARAM_PREFIX}{name}": value for name, value in params.tensors.items() if name != "head.bias"}
        path = tmp_path / "partial.npz"
        np.savez(
            path,
            format_version=np.array(FORMAT_VERSION),
            metadata=np.array('{"hidden": 4, "use_maps": true}'),
            **arrays,
        )
        with pytest.raises(CheckpointError, match="invalid"):
            load_checkpoint(path)
