"""Tether application — one function per CLI command.

Each command takes a resolved ``TetherConfig``, prints its banner and
tables, writes its result files and returns the paths it wrote.  ``run``
dispatches on ``config.command``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

from tether.banner import print_banner, print_sweep_stats
from tether.classifiers import DecisionTreeModel, accuracy, fit
from tether.config import TetherConfig
from tether.datasets import (
    DtiDataset,
    LabeledTable,
    load_dti,
    read_kinds_file,
    read_table_csv,
    split_holdout,
    stats as dataset_stats,
    weather_fixture,
)
from tether.evaluation import CvRun, comparison_table, evaluate, write_curve, write_summary
from tether.observability import SweepProfiler, compute_aggregate_stats, get_collector
from tether.predictors import (
    PredictorConfig,
    header_lines,
    predict_all,
    write_scores_long,
    write_scores_wide,
)


def _load_datasets(config: TetherConfig) -> tuple[list[DtiDataset], float]:
    t0 = time.perf_counter()
    datasets = [
        load_dti(s.interactions, s.drug_similarity, s.target_similarity, name=s.name)
        for s in config.sources()
    ]
    return datasets, (time.perf_counter() - t0) * 1000


def _stem(ds: DtiDataset, pc: PredictorConfig) -> str:
    return f"{ds.name}_{pc.method}_{pc.similarity.kind}"


def _text_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True)).rstrip() for r in rows)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def stats(config: TetherConfig) -> list[Path]:
    """Print the dataset statistics table; writes no files."""
    datasets, load_ms = _load_datasets(config)
    print_banner(config, datasets=datasets, load_ms=load_ms)
    rows: list[list[str]] = []
    for ds in datasets:
        cells = dataset_stats(ds).as_row()
        if not rows:
            rows.append(["dataset", *cells])
        rows.append([ds.name, *cells.values()])
    print(_text_table(rows))
    return []


def predict(config: TetherConfig) -> list[Path]:
    """Score every pair of the unmasked dataset; writes wide and long score files."""
    (ds,), load_ms = _load_datasets(config)
    print_banner(config, datasets=[ds], load_ms=load_ms)
    pc = config.predictor_config()
    t0 = time.perf_counter()
    scores = predict_all(ds, pc)
    header = header_lines(
        scores.params, command="predict", dataset=ds.name, wall_time_s=time.perf_counter() - t0
    )
    out = config.output_path
    out.mkdir(parents=True, exist_ok=True)
    stem = _stem(ds, pc)
    return [
        write_scores_wide(out / f"{stem}_scores.tsv", scores, header=header),
        write_scores_long(out / f"{stem}_pairs.tsv", scores, ds.interactions, header=header),
    ]


def _cv_run(config: TetherConfig, ds: DtiDataset, pc: PredictorConfig) -> tuple[CvRun, float, SweepProfiler]:
    profiler = SweepProfiler(get_collector().log, verbose=config.verbose)
    profiler.begin(f"{ds.name}/{pc.method}/{pc.similarity.kind}", n_pairs=ds.n_pairs, workers=pc.workers)
    t0 = time.perf_counter()
    run = evaluate(ds, pc, aupr_method=config.aupr_method, profiler=profiler)
    return run, time.perf_counter() - t0, profiler


def cv(config: TetherConfig) -> list[Path]:
    """LOOCV over every pair; writes summary, ROC, PR and LOOCV score files."""
    (ds,), load_ms = _load_datasets(config)
    print_banner(config, datasets=[ds], load_ms=load_ms)
    pc = config.predictor_config()
    run, wall, profiler = _cv_run(config, ds, pc)
    header = header_lines(
        {**run.report.params, "aupr_method": config.aupr_method},
        command="cv",
        dataset=ds.name,
        wall_time_s=wall,
    )
    out = config.output_path
    out.mkdir(parents=True, exist_ok=True)
    stem = _stem(ds, pc)
    with profiler.stage("write"):
        paths = [
            write_summary(out / f"{stem}_summary.tsv", [run], header=header),
            write_curve(out / f"{stem}_roc.tsv", run.report, "roc", header=header),
            write_curve(out / f"{stem}_pr.tsv", run.report, "pr", header=header),
            write_scores_wide(out / f"{stem}_loocv_scores.tsv", run.scores, header=header),
        ]
    profiler.finish()
    print(comparison_table([run]))
    if config.verbose:
        print_sweep_stats(compute_aggregate_stats(get_collector().log))
    return paths


def compare(config: TetherConfig) -> list[Path]:
    """LOOCV for every dataset x method x similarity; prints one combined table."""
    datasets, load_ms = _load_datasets(config)
    print_banner(config, datasets=datasets, load_ms=load_ms)
    runs: list[CvRun] = []
    wall = 0.0
    for ds in datasets:
        for method, kind in config.runs():
            run, seconds, profiler = _cv_run(config, ds, config.predictor_config(method, kind))
            profiler.finish()
            runs.append(run)
            wall += seconds
    params = {
        "methods": ",".join(dict.fromkeys(m for m, _ in config.runs())),
        "similarities": ",".join(dict.fromkeys(s for _, s in config.runs())),
        "aupr_method": config.aupr_method,
    }
    header = header_lines(
        params, command="compare", dataset=",".join(ds.name for ds in datasets), wall_time_s=wall
    )
    out = config.output_path
    out.mkdir(parents=True, exist_ok=True)
    path = write_summary(out / "compare_summary.tsv", runs, header=header)
    print(comparison_table(runs))
    if config.verbose:
        print_sweep_stats(compute_aggregate_stats(get_collector().log))
    return [path]


def _read_table(config: TetherConfig) -> LabeledTable:
    if config.weather:
        return weather_fixture()
    kinds_path = config.kinds_path
    kinds = read_kinds_file(kinds_path) if kinds_path is not None else None
    table_path = config.table_path
    assert table_path is not None
    return read_table_csv(table_path, label_column=config.label_column, kinds=kinds)


def classify(config: TetherConfig) -> list[Path]:
    """Fit a classifier on the whole table and report holdout accuracy.

    The reported model (tree structure included) is fit on every row;
    accuracy comes from a second fit on the training split, scored on
    the held-out rows.  With ``holdout`` 0 the training accuracy is shown.

    """
    print_banner(config)
    table = _read_table(config)
    clf = config.classifier_config()
    model = fit(clf, table)
    lines = [f"algorithm: {clf.algorithm}"]
    if config.holdout > 0 and table.n_rows > 1:
        train, hold = split_holdout(table, config.holdout, config.seed)
        score = accuracy(fit(clf, train), hold)
        lines += [
            f"rows: {table.n_rows} (train {train.n_rows}, holdout {hold.n_rows})",
            f"holdout accuracy: {score:.3f}",
        ]
    else:
        lines += [f"rows: {table.n_rows}", f"training accuracy: {accuracy(model, table):.3f}"]
    if isinstance(model, DecisionTreeModel):
        lines += [
            f"root attribute: {model.root_attribute}",
            f"depth: {model.depth}  leaves: {model.n_leaves}",
            model.render(),
        ]
    print("\n".join(lines))
    return []


_COMMANDS = {
    "stats": stats,
    "predict": predict,
    "cv": cv,
    "classify": classify,
    "compare": compare,
}


def run(config: TetherConfig) -> list[Path]:
    """Run ``config.command``; returns the files written."""
    paths = _COMMANDS[config.command](config)
    for path in paths:
        print(f"wrote {path}", file=sys.stderr)
    return paths
