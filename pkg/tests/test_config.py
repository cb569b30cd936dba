"""Tests for tether.config."""

from __future__ import annotations

from pathlib import Path

import pytest

from tether._errors import ConfigError
from tether.config import DatasetSource, TetherConfig


def _paths(tmp_path: Path) -> dict[str, Path]:
    return {
        "interactions": tmp_path / "a.tsv",
        "drug_similarity": tmp_path / "sd.tsv",
        "target_similarity": tmp_path / "st.tsv",
    }


class TestTetherConfig:
    """TetherConfig — frozen run configuration with validation."""

    def test_defaults(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        assert config.command == "cv"
        assert config.method == "blm"
        assert config.similarity == "chem_seq"
        assert config.workers == 1
        assert config.aupr_method == "average_precision"
        assert config.holdout == 0.3

    def test_frozen(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        with pytest.raises(AttributeError):
            config.workers = 4  # type: ignore[misc]

    def test_relative_root_resolved_to_absolute(self) -> None:
        config = TetherConfig(command="classify", root=Path("site"), weather=True)
        assert config.root.is_absolute()

    def test_output_resolves_from_root(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        assert config.output_path == tmp_path / "results"

    def test_absolute_output_preserved(self, tmp_path: Path) -> None:
        output = tmp_path / "elsewhere"
        config = TetherConfig(root=tmp_path / "r", output=output, **_paths(tmp_path))
        assert config.output_path == output

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"command": "train"},
            {"workers": 0},
            {"aupr_method": "roc"},
            {"holdout": 1.0},
            {"method": "svm"},
            {"similarity": "docking"},
            {"hybrid_weight": 2.0},
            {"bgm_bandwidth": 0.0},
            {"local_classifier": "perceptron"},
            {"combine": "sum"},
        ],
    )
    def test_rejects_invalid(self, tmp_path: Path, kwargs: dict[str, object]) -> None:
        with pytest.raises(ConfigError):
            TetherConfig(root=tmp_path, **_paths(tmp_path), **kwargs)  # type: ignore[arg-type]


class TestSources:
    """Dataset selection."""

    def test_explicit_paths(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        assert config.sources() == [
            DatasetSource("a", tmp_path / "a.tsv", tmp_path / "sd.tsv", tmp_path / "st.tsv")
        ]

    def test_relative_paths_resolve_from_root(self, tmp_path: Path) -> None:
        config = TetherConfig(
            root=tmp_path,
            interactions=Path("x.tsv"),
            drug_similarity=Path("y.tsv"),
            target_similarity=Path("z.tsv"),
        )
        assert config.sources()[0].interactions == tmp_path / "x.tsv"

    def test_partial_paths(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="together"):
            TetherConfig(root=tmp_path, interactions=tmp_path / "a.tsv")

    def test_paths_and_benchmark_conflict(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="not both"):
            TetherConfig(root=tmp_path, dataset_dir=tmp_path, names=("nr",), **_paths(tmp_path))

    def test_no_dataset(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="needs a dataset"):
            TetherConfig(root=tmp_path, command="predict")

    def test_benchmarks(self, tmp_path: Path) -> None:
        config = TetherConfig(
            root=tmp_path, command="compare", dataset_dir=Path("data"), names=("nr", "GPCR")
        )
        sources = config.sources()
        assert [s.name for s in sources] == ["nr", "gpcr"]
        assert sources[0].interactions == tmp_path / "data" / "nr_admat_dgc.txt"

    def test_single_dataset_command(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="takes one dataset"):
            TetherConfig(root=tmp_path, command="cv", dataset_dir=tmp_path, names=("nr", "e"))

    def test_stats_takes_several(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, command="stats", dataset_dir=tmp_path, names=("nr", "ic"))
        assert [s.name for s in config.sources()] == ["nr", "ic"]

    def test_unknown_benchmark(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="unknown benchmark"):
            TetherConfig(root=tmp_path, dataset_dir=tmp_path, names=("kinase",))

    def test_classify_needs_no_dataset(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, command="classify", table=Path("t.csv"))
        assert config.table_path == tmp_path / "t.csv"
        assert config.kinds_path is None

    def test_classify_needs_table(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="--weather"):
            TetherConfig(root=tmp_path, command="classify")


class TestLibraryRecords:
    """predictor_config, classifier_config and runs."""

    def test_predictor_config(self, tmp_path: Path) -> None:
        config = TetherConfig(
            root=tmp_path,
            method="blmn",
            similarity="hybrid",
            hybrid_weight=0.3,
            delta=0.5,
            workers=4,
            **_paths(tmp_path),
        )
        pc = config.predictor_config()
        assert pc.method == "blmn"
        assert pc.similarity.kind == "hybrid"
        assert pc.similarity.hybrid_weight == 0.3
        assert pc.blm.local_classifier.delta == 0.5
        assert pc.workers == 4
        assert pc.local_params.neighbor_inferring

    def test_predictor_config_override(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        pc = config.predictor_config("bgm", "network_based")
        assert pc.method == "bgm"
        assert pc.similarity.kind == "network_based"

    def test_classifier_config(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, command="classify", weather=True, algorithm="knn", seed=9)
        cc = config.classifier_config()
        assert cc.algorithm == "knn"
        assert cc.seed == 9

    def test_classify_rejects_unknown_algorithm(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="unknown algorithm 'perceptron'"):
            TetherConfig(
                root=tmp_path,
                command="classify",
                weather=True,
                algorithm="perceptron",  # type: ignore[arg-type]
            )

    def test_runs_similarities_outermost(self, tmp_path: Path) -> None:
        config = TetherConfig(
            root=tmp_path,
            command="compare",
            methods=("blm", "bgm"),
            similarities=("chem_seq", "network_based"),
            **_paths(tmp_path),
        )
        assert config.runs() == [
            ("blm", "chem_seq"),
            ("bgm", "chem_seq"),
            ("blm", "network_based"),
            ("bgm", "network_based"),
        ]

    def test_runs_default_single(self, tmp_path: Path) -> None:
        config = TetherConfig(root=tmp_path, **_paths(tmp_path))
        assert config.runs() == [("blm", "chem_seq")]
