"""Bipartite local models, with optional neighbour-based label inferring.

For a pair (i, j) two local models are trained.  The drug-side model
learns over targets: its kernel is the target similarity and its labels
are row i of A.  It scores target j.  The target-side model learns over
drugs from column j and scores drug i.  The pair score is the max (or
mean) of the two.

With neighbour inferring on, a node whose profile is empty after masking
gets soft labels from its neighbours instead:

    linear:       l(i) = s_iᵀ A              (similarities below threshold zeroed)
    exponential:  l(i) = exp(s_i / β)ᵀ A     (same threshold)

followed by min-max rescaling to [0, 1].  Nodes with any known
interaction are untouched, so BLMN equals BLM whenever no masked profile
is empty.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from tether._types import DenseMatrix, InferringMode, InteractionMatrix, RealVector, Side
from tether.classifiers import ClassifierConfig, fit, svm_decision, svm_fit
from tether.datasets.dti import DtiDataset
from tether.datasets.table import LabeledTable
from tether.linalg import RlsSolver
from tether.predictors._params import BlmParams, PairScore, PredictorConfig, ScoreMatrix
from tether.predictors._sweep import SweepResult, sweep_pairs
from tether.similarity import SimilaritySource, as_kernel, resolve

# Soft labels at or above this count as positive for non-RLS local models
SOFT_LABEL_CUT = 0.5


# ---------------------------------------------------------------------------
# Neighbour-based inferring
# ---------------------------------------------------------------------------


def rescale_unit(v: RealVector) -> RealVector:
    """Min-max rescale to [0, 1]; a constant vector maps to zeros."""
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        return v.copy()
    lo, hi = float(v.min()), float(v.max())
    if hi - lo <= 0.0:
        return np.zeros_like(v)
    return (v - lo) / (hi - lo)


def weighted_profile(
    similarities: RealVector,
    profiles: DenseMatrix,
    *,
    mode: InferringMode = "linear",
    beta: float = 1.0,
    threshold: float = 0.0,
) -> RealVector:
    """Similarity-weighted sum of neighbour profiles, before rescaling.

    Args:
        similarities: Similarity of the node to each neighbour (one per
            row of *profiles*).
        profiles: Neighbour interaction profiles, one per row.

    """
    s = np.asarray(similarities, dtype=np.float64)
    weights = s if mode == "linear" else np.exp(s / beta)
    weights = np.where(s < threshold, 0.0, weights)
    return weights @ np.asarray(profiles, dtype=np.float64)


def infer_profile(
    ds: DtiDataset,
    index: int,
    *,
    side: Side = "drugs",
    mode: InferringMode = "linear",
    beta: float = 1.0,
    threshold: float = 0.0,
    interactions: InteractionMatrix | None = None,
    similarity: DenseMatrix | None = None,
) -> RealVector:
    """Inferred interaction profile of drug (or target) *index*, in [0, 1].

    The node's own similarity is excluded; only neighbours contribute.
    *interactions* and *similarity* default to the dataset's matrices.

    """
    a = np.asarray(ds.interactions if interactions is None else interactions, dtype=np.float64)
    if side == "drugs":
        s = ds.drug_similarity if similarity is None else similarity
        profiles = a
    else:
        s = ds.target_similarity if similarity is None else similarity
        profiles = a.T
    row = np.array(s[index], dtype=np.float64)
    others = np.arange(row.shape[0]) != index
    raw = weighted_profile(
        row[others], profiles[others], mode=mode, beta=beta, threshold=threshold
    )
    return rescale_unit(raw)


# ---------------------------------------------------------------------------
# Local models
# ---------------------------------------------------------------------------


class LocalLearner:
    """Scores one node's candidates from a similarity matrix over them.

    For RLS the factorization of (K + δI) is built once and reused for
    every label vector.  SVM local models use ±1 labels and return the
    decision value.  Any other classifier is trained on similarity rows
    as numeric features and returns the positive-class score.

    """

    __slots__ = ("_names", "_solver", "config", "kernel", "similarity")

    def __init__(self, similarity: DenseMatrix, config: ClassifierConfig) -> None:
        self.similarity = np.asarray(similarity, dtype=np.float64)
        self.config = config
        self.kernel = as_kernel(self.similarity)
        self._solver = RlsSolver(self.kernel, config.delta) if config.algorithm == "rls" else None
        self._names = tuple(f"s{k}" for k in range(self.similarity.shape[0]))

    def score(self, labels: RealVector, query: int) -> float:
        """Score item *query* given (possibly soft) labels over all items."""
        y = np.asarray(labels, dtype=np.float64)
        if self._solver is not None:
            return float(self._solver.hat_row(query) @ y)
        positive = y >= SOFT_LABEL_CUT
        if self.config.algorithm == "svm":
            signs = np.where(positive, 1.0, -1.0)
            if positive.all():
                return 1.0
            solution = svm_fit(
                self.kernel,
                signs,
                self.config.C,
                tol=self.config.svm_tol,
                max_iter=self.config.svm_max_iter,
            )
            return float(svm_decision(solution, signs, self.kernel[:, [query]])[0])
        if positive.all():
            return 1.0
        table = LabeledTable(
            feature_names=self._names,
            feature_kinds=("numeric",) * len(self._names),
            rows=tuple(tuple(r) for r in self.similarity.tolist()),
            labels=tuple("1" if p else "0" for p in positive),
        )
        model = fit(replace(self.config, workers=1), table)
        prediction = model.predict_row(table.rows[query])
        return float(prediction.score_per_class.get("1", 0.0))


# ---------------------------------------------------------------------------
# Pair scoring
# ---------------------------------------------------------------------------


class BlmScorer:
    """Pair scorer for BLM and BLMN over one dataset.

    Local learners are cached for the dataset's own similarities.  When the
    similarity source depends on A (network or hybrid, recomputed per
    mask) and the scored matrix differs from the dataset's, fresh learners
    are built from the matrix that was passed in.

    """

    __slots__ = ("_drug_learner", "_target_learner", "ds", "params", "source")

    def __init__(self, ds: DtiDataset, params: BlmParams, source: SimilaritySource) -> None:
        self.ds = ds
        self.params = params
        self.source = source
        s_d, s_t = resolve(ds, source)
        # The drug-side model learns over targets, and vice versa
        self._drug_learner = LocalLearner(s_t, params.local_classifier)
        self._target_learner = LocalLearner(s_d, params.local_classifier)

    def _learners(
        self, a: InteractionMatrix
    ) -> tuple[LocalLearner, LocalLearner, DenseMatrix, DenseMatrix]:
        if self.source.varies_with_mask and not np.array_equal(a, self.ds.interactions):
            s_d, s_t = resolve(self.ds, self.source, a)
            clf = self.params.local_classifier
            return LocalLearner(s_t, clf), LocalLearner(s_d, clf), s_d, s_t
        return (
            self._drug_learner,
            self._target_learner,
            self._target_learner.similarity,
            self._drug_learner.similarity,
        )

    def _side(
        self,
        learner: LocalLearner,
        labels: RealVector,
        query: int,
        infer: tuple[Side, int, DenseMatrix, InteractionMatrix] | None,
    ) -> tuple[float, bool, bool]:
        """(score, no_training_data, inferred) for one directional model."""
        if labels.any():
            return learner.score(labels, query), False, False
        if infer is None:
            return 0.0, True, False
        side, index, similarity, a = infer
        p = self.params
        soft = infer_profile(
            self.ds,
            index,
            side=side,
            mode=p.inferring_mode,
            beta=p.beta,
            threshold=p.neighbor_threshold,
            interactions=a,
            similarity=similarity,
        )
        if not soft.any():
            return 0.0, True, True
        return learner.score(soft, query), False, True

    def score_pair(self, a: InteractionMatrix, i: int, j: int) -> PairScore:
        """Score pair (i, j) from interaction matrix *a* exactly as given."""
        a = np.asarray(a)
        drug_learner, target_learner, s_d, s_t = self._learners(a)
        inferring = self.params.neighbor_inferring
        d_score, d_empty, d_inf = self._side(
            drug_learner,
            a[i].astype(np.float64),
            j,
            ("drugs", i, s_d, a) if inferring else None,
        )
        t_score, t_empty, t_inf = self._side(
            target_learner,
            a[:, j].astype(np.float64),
            i,
            ("targets", j, s_t, a) if inferring else None,
        )
        combined = max(d_score, t_score) if self.params.combine == "max" else 0.5 * (d_score + t_score)
        return PairScore(
            score=combined,
            drug_score=d_score,
            target_score=t_score,
            drug_no_training_data=d_empty,
            target_no_training_data=t_empty,
            drug_inferred=d_inf,
            target_inferred=t_inf,
        )


def blm_predict_pair(
    ds: DtiDataset,
    i: int,
    j: int,
    params: BlmParams,
    *,
    interactions: InteractionMatrix | None = None,
    source: SimilaritySource | None = None,
) -> PairScore:
    """Score one pair from *interactions* (the caller masks a_ij when evaluating)."""
    scorer = BlmScorer(ds, params, source or SimilaritySource())
    a = ds.interactions if interactions is None else np.asarray(interactions, dtype=np.int8)
    return scorer.score_pair(a, i, j)


def _as_score_matrix(ds: DtiDataset, result: SweepResult, config: PredictorConfig) -> ScoreMatrix:
    return ScoreMatrix(
        values=result.values,
        method=config.method,
        params=config.describe(),
        drug_ids=ds.drug_ids,
        target_ids=ds.target_ids,
        n_inferred=result.n_inferred,
    )


def blm_sweep(ds: DtiDataset, config: PredictorConfig, *, mask: bool) -> ScoreMatrix:
    """Score every pair with BLM or BLMN (per ``config.method``)."""
    scorer = BlmScorer(ds, config.local_params, config.similarity)
    result = sweep_pairs(
        ds.interactions,
        scorer.score_pair,
        mask=mask,
        workers=config.workers,
        drug_ids=ds.drug_ids,
        target_ids=ds.target_ids,
    )
    return _as_score_matrix(ds, result, config)


def blmn_predict_all(ds: DtiDataset, config: PredictorConfig | None = None) -> ScoreMatrix:
    """BLMN score matrix with every pair masked in turn."""
    config = replace(config or PredictorConfig(), method="blmn")
    return blm_sweep(ds, config, mask=True)
