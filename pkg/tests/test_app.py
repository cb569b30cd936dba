"""Tests for tether.app — command functions on a resolved config."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from tether.app import classify, compare, cv, predict, run
from tether.config import TetherConfig
from tether.datasets import DtiDataset, read_matrix_tsv
from tether.observability import RunCollector
from tether.predictors.io import VOLATILE_KEYS


def _config(files: tuple[Path, Path, Path], root: Path, **kwargs: object) -> TetherConfig:
    a, sd, st = files
    return TetherConfig(
        root=root,
        interactions=a,
        drug_similarity=sd,
        target_similarity=st,
        **kwargs,  # type: ignore[arg-type]
    )


class TestPredict:
    """tether predict."""

    def test_scores_match_library(
        self, tmp_path: Path, dataset_files: tuple[Path, Path, Path], toy_ds: DtiDataset
    ) -> None:
        from tether.predictors import predict_all

        config = _config(dataset_files, tmp_path, command="predict")
        wide, long = predict(config)
        back = read_matrix_tsv(wide)
        expected = predict_all(toy_ds, config.predictor_config())
        np.testing.assert_array_equal(back.values, expected.values)
        assert long.read_text().splitlines()[0].startswith("# tether ")


class TestCv:
    """tether cv."""

    def test_reruns_match_outside_volatile_header(
        self, tmp_path: Path, dataset_files: tuple[Path, Path, Path]
    ) -> None:
        volatile = tuple(f"# {key}:" for key in VOLATILE_KEYS)
        bodies = []
        for workers in (1, 3):
            config = _config(
                dataset_files, tmp_path, command="cv", workers=workers, output=Path(f"w{workers}")
            )
            paths = cv(config)
            bodies.append(
                [
                    [
                        line
                        for line in p.read_text().splitlines()
                        if not line.startswith(volatile)
                    ]
                    for p in paths
                ]
            )
        assert bodies[0] == bodies[1]

    def test_header_records_aupr_method(
        self, tmp_path: Path, dataset_files: tuple[Path, Path, Path]
    ) -> None:
        config = _config(dataset_files, tmp_path, command="cv", aupr_method="trapezoid")
        summary = cv(config)[0]
        assert "# aupr_method: trapezoid" in summary.read_text().splitlines()


class TestClassify:
    """tether classify on CSV files."""

    @pytest.fixture
    def table_csv(self, tmp_path: Path) -> Path:
        path = tmp_path / "points.csv"
        rows = ["x,y,colour,label"]
        rows += [f"{i},{i % 3},{('red', 'blue')[i % 2]},low" for i in range(10)]
        rows += [f"{i + 20},{i % 3},{('red', 'blue')[i % 2]},high" for i in range(10)]
        path.write_text("\n".join(rows) + "\n")
        return path

    def test_holdout_accuracy(
        self, tmp_path: Path, table_csv: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        config = TetherConfig(command="classify", root=tmp_path, table=table_csv)
        assert classify(config) == []
        out = capsys.readouterr().out
        assert "rows: 20 (train 14, holdout 6)" in out
        assert "holdout accuracy: 1.000" in out

    def test_kinds_override(
        self, tmp_path: Path, table_csv: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        kinds = tmp_path / "kinds.toml"
        kinds.write_text('[kinds]\ny = "categorical"\n')
        config = TetherConfig(
            command="classify", root=tmp_path, table=table_csv, kinds=kinds, holdout=0.0
        )
        classify(config)
        out = capsys.readouterr().out
        assert "root attribute: x" in out
        assert "training accuracy: 1.000" in out


class TestCompare:
    """tether compare."""

    def test_verbose_summarizes_sweeps(
        self,
        tmp_path: Path,
        dataset_files: tuple[Path, Path, Path],
        collector: RunCollector,
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        config = _config(
            dataset_files, tmp_path, command="compare", methods=("blm", "bgm"), verbose=True
        )
        (summary,) = compare(config)
        assert summary.name == "compare_summary.tsv"
        err = capsys.readouterr().err
        assert "toy_admat/bgm/chem_seq -> 20 pairs" in err
        assert "2 sweeps, 40 pairs: p50 " in err

    def test_quiet_by_default(
        self,
        tmp_path: Path,
        dataset_files: tuple[Path, Path, Path],
        collector: RunCollector,
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        compare(_config(dataset_files, tmp_path, command="compare"))
        assert "sweep" not in capsys.readouterr().err


class TestRun:
    """Dispatch."""

    def test_run_reports_written_files(
        self,
        tmp_path: Path,
        dataset_files: tuple[Path, Path, Path],
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        paths = run(_config(dataset_files, tmp_path, command="predict"))
        err = capsys.readouterr().err
        assert all(f"wrote {p}" in err for p in paths)

    def test_stats_writes_nothing(
        self, tmp_path: Path, dataset_files: tuple[Path, Path, Path]
    ) -> None:
        assert run(_config(dataset_files, tmp_path, command="stats")) == []
