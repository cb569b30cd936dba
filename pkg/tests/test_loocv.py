"""Tests for LOOCV, the pair sweep engine and the report writers."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from tether._errors import NumericError
from tether.datasets import DtiDataset
from tether.evaluation import (
    SUMMARY_COLUMNS,
    SWEEP,
    CvRun,
    comparison_table,
    evaluate,
    loocv,
    write_curve,
    write_summary,
)
from tether.predictors import PairScore, PredictorConfig, header_lines, predict_all, sweep_pairs
from tether.predictors.io import VOLATILE_KEYS


def _body(path: Path) -> list[str]:
    """File lines without the run-dependent header entries."""
    volatile = tuple(f"# {key}:" for key in VOLATILE_KEYS)
    return [line for line in path.read_text().splitlines() if not line.startswith(volatile)]


class TestSweepPairs:
    """The masked pair sweep."""

    def test_scorer_never_sees_its_own_entry(self, toy_ds: DtiDataset) -> None:
        seen: list[tuple[int, int]] = []

        def tripwire(a: np.ndarray, i: int, j: int) -> PairScore:
            assert a[i, j] == 0
            seen.append((i, j))
            return PairScore(score=float(a.sum()))

        result = sweep_pairs(toy_ds.interactions, tripwire)
        assert len(seen) == 20
        # masking a known interaction removes exactly one entry
        expected = 9 - toy_ds.interactions.astype(float)
        np.testing.assert_array_equal(result.values, expected)

    def test_unmasked_sweep_sees_full_matrix(self, toy_ds: DtiDataset) -> None:
        result = sweep_pairs(toy_ds.interactions, lambda a, i, j: PairScore(score=float(a[i, j])), mask=False)
        np.testing.assert_array_equal(result.values, toy_ds.interactions)

    def test_failure_names_the_pair(self, toy_ds: DtiDataset) -> None:
        def failing(a: np.ndarray, i: int, j: int) -> PairScore:
            if (i, j) == (2, 1):
                msg = "solver blew up"
                raise NumericError(msg)
            return PairScore(score=0.0)

        with pytest.raises(NumericError) as info:
            sweep_pairs(
                toy_ds.interactions,
                failing,
                drug_ids=toy_ds.drug_ids,
                target_ids=toy_ds.target_ids,
            )
        assert info.value.pair == (2, 1)
        assert any("(D3, T2)" in note for note in info.value.__notes__)

    def test_flags_are_collected(self, toy_ds: DtiDataset) -> None:
        result = sweep_pairs(
            toy_ds.interactions,
            lambda a, i, j: PairScore(score=0.0, drug_inferred=i == 0, target_no_training_data=j == 0),
        )
        assert result.n_inferred == 4
        assert int(result.no_training_data.sum()) == 5


class TestLoocv:
    """loocv and evaluate."""

    def test_worker_count_does_not_change_scores(self, toy_ds: DtiDataset) -> None:
        serial = loocv(toy_ds, PredictorConfig(method="blmn", workers=1))
        threaded = loocv(toy_ds, PredictorConfig(method="blmn", workers=8))
        np.testing.assert_array_equal(serial.values, threaded.values)
        assert serial.n_inferred == threaded.n_inferred

    def test_masked_scores_differ_from_full_prediction(self, toy_ds: DtiDataset) -> None:
        masked = loocv(toy_ds, PredictorConfig())
        full = predict_all(toy_ds, PredictorConfig())
        # D5-T4 is the only edge of both nodes, so masking it leaves no training data
        assert masked.values[4, 3] == 0.0
        assert full.values[4, 3] > 0.0

    def test_params_record_sweep(self, toy_ds: DtiDataset) -> None:
        scores = loocv(toy_ds, PredictorConfig(method="bgm"))
        assert scores.params["sweep"] == SWEEP == "all_pairs"
        assert scores.params["method"] == "bgm"

    def test_evaluate(self, dense_ds: DtiDataset) -> None:
        run = evaluate(dense_ds, PredictorConfig())
        assert run.dataset == "dense"
        assert 0.0 <= run.report.auc <= 1.0
        assert run.report.n_pairs == 30
        assert run.report.n_positives == int(dense_ds.interactions.sum())


class TestReports:
    """Summary and curve files, and the comparison table."""

    @pytest.fixture
    def runs(self, dense_ds: DtiDataset) -> list[CvRun]:
        return [evaluate(dense_ds, PredictorConfig(method=m)) for m in ("blm", "bgm")]

    def test_summary_columns(self, tmp_path: Path, runs: list[CvRun]) -> None:
        path = write_summary(tmp_path / "summary.tsv", runs, header=["command: cv"])
        lines = path.read_text().splitlines()
        assert lines[0] == "# command: cv"
        assert lines[1].split("\t") == list(SUMMARY_COLUMNS)
        row = dict(zip(SUMMARY_COLUMNS, lines[2].split("\t"), strict=True))
        assert row["method"] == "blm"
        assert row["sweep"] == "all_pairs"
        assert float(row["auc"]) == runs[0].report.auc

    def test_curve_files(self, tmp_path: Path, runs: list[CvRun]) -> None:
        report = runs[0].report
        roc = write_curve(tmp_path / "roc.tsv", report, "roc").read_text().splitlines()
        pr = write_curve(tmp_path / "pr.tsv", report, "pr").read_text().splitlines()
        assert roc[0] == "threshold\tfpr\ttpr"
        assert pr[0] == "threshold\trecall\tprecision"
        assert roc[1] == "inf\t0.0\t0.0"
        assert pr[1] == "inf\t0.0\t1.0"
        assert len(roc) == len(pr) == len(report.points) + 1

    def test_comparison_table(self, runs: list[CvRun]) -> None:
        table = comparison_table(runs).splitlines()
        assert table[0].split() == ["dataset", "similarity", "BLM", "AUC", "BLM", "AUPR", "BGM", "AUC", "BGM", "AUPR"]
        cells = table[1].split()
        assert cells[:2] == ["dense", "chem_seq"]
        assert cells[2] == f"{100 * runs[0].report.auc:.1f}"

    def test_missing_cell_is_dash(self, runs: list[CvRun], toy_ds: DtiDataset) -> None:
        extra = evaluate(toy_ds, PredictorConfig(method="blm"))
        lines = comparison_table([*runs, extra]).splitlines()
        assert lines[2].split()[-2:] == ["-", "-"]

    def test_bodies_independent_of_workers(self, tmp_path: Path, toy_ds: DtiDataset) -> None:
        paths = []
        for workers in (1, 4):
            config = PredictorConfig(method="blmn", workers=workers)
            run = evaluate(toy_ds, config)
            header = header_lines(run.scores.params, command="cv", dataset="toy", wall_time_s=0.1 * workers)
            out = tmp_path / f"w{workers}"
            out.mkdir()
            paths.append(
                (
                    write_summary(out / "summary.tsv", [run], header=header),
                    write_curve(out / "roc.tsv", run.report, "roc", header=header),
                )
            )
        for first, second in zip(paths[0], paths[1], strict=True):
            assert _body(first) == _body(second)
