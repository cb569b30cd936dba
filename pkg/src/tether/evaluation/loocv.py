"""Leave-one-out cross validation over drug-target pairs.

Every pair (i, j), positive or not, is held out in turn by zeroing a_ij
in a scratch copy of A and re-predicted from the rest.  The assembled
score matrix is then compared with the untouched A.
"""

from __future__ import annotations

from contextlib import AbstractContextManager, nullcontext
from dataclasses import dataclass

from tether.datasets.dti import DtiDataset
from tether.evaluation.metrics import AuprMethod, EvalReport, roc_pr
from tether.observability import SweepProfiler
from tether.predictors import PredictorConfig, ScoreMatrix, make_scorer, sweep_pairs

# All pairs are masked, not only the known interactions
SWEEP = "all_pairs"


def _stage(profiler: SweepProfiler | None, name: str) -> AbstractContextManager[None]:
    return nullcontext() if profiler is None else profiler.stage(name)


def loocv(
    ds: DtiDataset,
    config: PredictorConfig,
    *,
    profiler: SweepProfiler | None = None,
) -> ScoreMatrix:
    """Score matrix with each entry predicted while its own a_ij is masked.

    Raises:
        TetherError: Whatever the predictor raised, with ``pair`` set.

    """
    with _stage(profiler, "similarity"):
        scorer = make_scorer(ds, config)
    with _stage(profiler, "predict"):
        result = sweep_pairs(
            ds.interactions,
            scorer.score_pair,
            mask=True,
            workers=config.workers,
            drug_ids=ds.drug_ids,
            target_ids=ds.target_ids,
        )
    return ScoreMatrix(
        values=result.values,
        method=config.method,
        params={**config.describe(), "sweep": SWEEP},
        drug_ids=ds.drug_ids,
        target_ids=ds.target_ids,
        n_inferred=result.n_inferred,
    )


@dataclass(frozen=True, slots=True)
class CvRun:
    """Scores and metrics of one LOOCV run."""

    dataset: str
    scores: ScoreMatrix
    report: EvalReport


def evaluate(
    ds: DtiDataset,
    config: PredictorConfig,
    *,
    aupr_method: AuprMethod = "average_precision",
    profiler: SweepProfiler | None = None,
) -> CvRun:
    """Run LOOCV and score the result against the dataset's interactions."""
    scores = loocv(ds, config, profiler=profiler)
    with _stage(profiler, "metrics"):
        report = roc_pr(
            scores.values,
            ds.interactions,
            aupr_method=aupr_method,
            method=config.method,
            params=scores.params,
            n_inferred=scores.n_inferred,
        )
    return CvRun(dataset=ds.name, scores=scores, report=report)
