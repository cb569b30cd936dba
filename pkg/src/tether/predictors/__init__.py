"""DTI predictors — BGM, BLM and BLMN, plus pair features.

Every predictor yields a ``ScoreMatrix`` over all drug-target pairs.
``predict_all`` scores the dataset as given; ``make_scorer`` returns the
per-pair callable that LOOCV drives with a masked matrix.
"""

from __future__ import annotations

from tether.datasets.dti import DtiDataset
from tether.predictors._params import (
    METHODS,
    BgmParams,
    BlmParams,
    PairScore,
    PredictorConfig,
    ScoreMatrix,
)
from tether.predictors._sweep import PairScorer, SweepResult, sweep_pairs
from tether.predictors.bgm import (
    BgmEmbedding,
    BgmScorer,
    bgm_embed,
    bgm_fit_predict,
    bgm_sweep,
    graph_distances,
    graph_kernel,
)
from tether.predictors.blm import (
    BlmScorer,
    LocalLearner,
    blm_predict_pair,
    blm_sweep,
    blmn_predict_all,
    infer_profile,
    rescale_unit,
    weighted_profile,
)
from tether.predictors.features import feature_sources, pair_feature_table, pair_features
from tether.predictors.io import header_lines, write_scores_long, write_scores_wide


def make_scorer(ds: DtiDataset, config: PredictorConfig) -> BgmScorer | BlmScorer:
    """Per-pair scorer for ``config.method``."""
    if config.method == "bgm":
        return BgmScorer(ds, config.bgm, config.similarity)
    return BlmScorer(ds, config.local_params, config.similarity)


def predict_all(ds: DtiDataset, config: PredictorConfig) -> ScoreMatrix:
    """Score every pair from the full, unmasked interaction matrix."""
    if config.method == "bgm":
        return bgm_sweep(ds, config, mask=False)
    return blm_sweep(ds, config, mask=False)


__all__ = [
    "METHODS",
    "BgmEmbedding",
    "BgmParams",
    "BgmScorer",
    "BlmParams",
    "BlmScorer",
    "LocalLearner",
    "PairScore",
    "PairScorer",
    "PredictorConfig",
    "ScoreMatrix",
    "SweepResult",
    "bgm_embed",
    "bgm_fit_predict",
    "blm_predict_pair",
    "blmn_predict_all",
    "feature_sources",
    "graph_distances",
    "graph_kernel",
    "header_lines",
    "infer_profile",
    "make_scorer",
    "pair_feature_table",
    "pair_features",
    "predict_all",
    "rescale_unit",
    "sweep_pairs",
    "weighted_profile",
    "write_scores_long",
    "write_scores_wide",
]
