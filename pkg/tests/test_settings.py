import pytest

from core.config import Settings, TrainConfig, Variant
from core.config.run_config import RunConfig, build_run_config, read_run_file
from core.services import ExperimentService
from core.utils.exceptions import ConfigError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("IGMTF_DATA_DIR", raising=False)
    monkeypatch.delenv("IGMTF_NORMALIZE", raising=False)


@pytest.fixture
def settings():
    return Settings()


class TestSettings:

    def test_missing_file_falls_back_to_defaults(self, tmp_path):
        settings = Settings.load_from_yaml(str(tmp_path / "absent.yaml"))
        assert settings.experiment.window == 168
        assert settings.data.fractions == [0.6, 0.2, 0.2]

    def test_sections_from_yaml(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text(
            "experiment:\n  epochs: 7\n  variant: ns\n"
            "data:\n  data_dir: /datasets\n"
            "runtime:\n  eval_workers: 4\n"
            "logging:\n  level: debug\n",
            encoding="utf-8",
        )
        settings = Settings.load_from_yaml(str(path))
        assert settings.experiment.epochs == 7
        assert settings.data.data_dir == "/datasets"
        assert settings.runtime.eval_workers == 4
        assert settings.logging.level == "DEBUG"

    def test_env_overrides_yaml_data_dir(self, tmp_path, monkeypatch):
        path = tmp_path / "config.yaml"
        path.write_text("data:\n  data_dir: /from/yaml\n", encoding="utf-8")
        monkeypatch.setenv("IGMTF_DATA_DIR", "/from/env")
        assert Settings.load_from_yaml(str(path)).data.data_dir == "/from/env"

    def test_broken_yaml(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("experiment: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            Settings.load_from_yaml(str(path))

    def test_invalid_values(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("logging:\n  level: loud\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            Settings.load_from_yaml(str(path))

    def test_dotted_get(self, settings):
        assert settings.get("experiment.k") == 10
        assert settings.get("runtime.missing", "fallback") == "fallback"

    def test_save_then_load(self, tmp_path, settings):
        settings.experiment.epochs = 12
        settings.runtime.sweep_workers = 3
        path = tmp_path / "saved.yaml"
        settings.save_to_yaml(str(path))
        assert Settings.load_from_yaml(str(path)).model_dump() == settings.model_dump()


class TestTrainConfig:

    @pytest.mark.parametrize("field, value", [
        ("lr", 0.0),
        ("l2", -1e-3),
        ("k", 0),
        ("window", 0),
        ("patience", 0),
        ("normalize", "zscore"),
    ])
    def test_rejects(self, field, value):
        with pytest.raises(ValueError):
            TrainConfig(**{field: value})

    def test_variant_flags(self):
        assert Variant.FULL.uses_maps and Variant.FULL.uses_similarity_sampler
        assert not Variant.NS.uses_similarity_sampler
        assert not Variant.NW.uses_maps


class TestBuildRunConfig:

    def test_dataset_table_fills_defaults(self, settings):
        config = build_run_config({"data": "exchange_rate", "horizon": 6}, settings=settings)
        assert (config.hidden, config.k, config.neighbors, config.lr) == (512, 5, 10, 0.0001)

    def test_flags_override_table(self, settings):
        config = build_run_config({"data": "exchange_rate", "k": 3, "lr": None}, settings=settings)
        assert config.k == 3
        assert config.neighbors == 20
        assert config.lr == 0.0001

    def test_unknown_dataset_uses_experiment_defaults(self, settings):
        config = build_run_config({"data": "my_series.csv"}, settings=settings)
        assert (config.hidden, config.k, config.neighbors) == (256, 10, 10)
        assert config.dataset_name is None

    def test_config_file_between_table_and_flags(self, tmp_path, settings):
        path = tmp_path / "run.yaml"
        path.write_text("data: exchange_rate\nsweep-k: [3, 5]\nepochs: 4\nseed: 9\n", encoding="utf-8")
        config = build_run_config({"seed": 1}, config_file=path, settings=settings)
        assert config.sweep_k == [3, 5]
        assert config.epochs == 4
        assert config.seed == 1
        assert config.is_sweep

    def test_missing_data(self, settings):
        with pytest.raises(ConfigError):
            build_run_config({"horizon": 3}, settings=settings)

    def test_unknown_key_in_file(self, tmp_path, settings):
        path = tmp_path / "run.yaml"
        path.write_text("data: x.csv\nlearning_rate: 0.1\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            build_run_config({}, config_file=path, settings=settings)

    def test_file_must_be_mapping(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("- data\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            read_run_file(path)

    @pytest.mark.parametrize("overrides", [
        {"lr": -1.0},
        {"l2": -0.5},
        {"sweep_k": []},
        {"sweep_n": [0, 5]},
        {"fractions": [0.5, 0.5, 0.5]},
    ])
    def test_invalid_values(self, overrides, settings):
        with pytest.raises(ConfigError):
            build_run_config({"data": "x.csv", **overrides}, settings=settings)

    def test_cell_and_echo(self):
        config = RunConfig(data="x.csv", sweep_k=[3, 5], sweep_n=[5])
        cell = config.cell(6, 5, 5, "cell.yaml")
        assert not cell.is_sweep
        assert (cell.horizon, cell.k, cell.neighbors, cell.out) == (6, 5, 5, "cell.yaml")
        assert "sweep_k" not in cell.echo()
        assert cell.echo()["variant"] == "full"

    def test_train_config_carries_fields(self):
        config = RunConfig(data="x.csv", variant="nw", hidden=8, patience=2).to_train_config()
        assert config.variant is Variant.NW
        assert (config.hidden, config.patience) == (8, 2)


class TestSweepCells:

    def test_horizon_sweep_uses_table_for_each_horizon(self, settings):
        config = build_run_config({"data": "exchange_rate", "sweep_h": [3, 6, 12, 24]}, settings=settings)
        cells = ExperimentService().sweep_cells(config)
        assert [(c.horizon, c.k, c.neighbors) for c in cells] == [(3, 20, 20), (6, 5, 10), (12, 10, 10), (24, 5, 20)]
        assert all((c.hidden, c.lr) == (512, 0.0001) for c in cells)

    def test_explicit_values_survive_horizon_sweep(self, settings):
        overrides = {"data": "exchange_rate", "sweep_h": [3, 6], "k": 7, "hidden": 16}
        cells = ExperimentService().sweep_cells(build_run_config(overrides, settings=settings))
        assert [(c.k, c.neighbors, c.hidden) for c in cells] == [(7, 20, 16), (7, 10, 16)]

    def test_values_from_config_file_are_explicit(self, tmp_path, settings):
        path = tmp_path / "run.yaml"
        path.write_text("data: exchange_rate\nneighbors: 4\n", encoding="utf-8")
        config = build_run_config({"sweep_h": [6, 12]}, config_file=path, settings=settings)
        cells = ExperimentService().sweep_cells(config)
        assert [(c.k, c.neighbors) for c in cells] == [(5, 4), (10, 4)]

    def test_k_sweep_takes_neighbors_from_table(self, settings):
        config = build_run_config({"data": "exchange_rate", "horizon": 12, "sweep_k": [3, 5]}, settings=settings)
        cells = ExperimentService().sweep_cells(config)
        assert [(c.horizon, c.k, c.neighbors) for c in cells] == [(12, 3, 10), (12, 5, 10)]

    def test_directly_built_config(self):
        config = RunConfig(data="exchange_rate", k=3, sweep_h=[6])
        assert config.table_defaults(6) == {"hidden": 512, "lr": 0.0001, "neighbors": 10}
        assert RunConfig(data="my_series.csv").table_defaults(6) == {}

    def test_unknown_dataset_keeps_values(self, settings):
        config = build_run_config({"data": "x.csv", "sweep_h": [3, 6]}, settings=settings)
        cells = ExperimentService().sweep_cells(config)
        assert [(c.k, c.neighbors, c.hidden) for c in cells] == [(10, 10, 256), (10, 10, 256)]

    def test_grid_keyword(self, settings):
        config = build_run_config({"data": "x.csv", "sweep_k": "grid", "sweep_h": "grid"}, settings=settings)
        assert config.sweep_k == [3, 5, 10, 20, 30]
        assert config.sweep_h == [3, 6, 12, 24]
        assert len(ExperimentService().sweep_cells(config)) == 20

    def test_cell_reports_next_to_summary(self, tmp_path, settings):
        out = tmp_path / "sweep.yaml"
        config = build_run_config({"data": "x.csv", "sweep_n": [2, 4], "out": str(out)}, settings=settings)
        assert [c.out for c in ExperimentService().sweep_cells(config)] == [
            str(tmp_path / "sweep_h3_k10_n2.yaml"),
            str(tmp_path / "sweep_h3_k10_n4.yaml"),
        ]
