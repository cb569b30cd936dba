"""Bipartite graph model: embed drugs and targets in one space.

1. Shortest-path distances d on the bipartite interaction graph between
   every drug and target with at least one known interaction give the
   kernel K = exp(-d²/h²) (unreachable pairs get 0).  K is PSD-repaired
   and factored as K = UUᵀ with U = ΓΛ^{1/2}.
2. Ridge regression from similarity rows to embedding coordinates learns
   one map for drugs and one for targets.
3. Nodes outside the graph are placed by mapping their similarity rows;
   nodes in the graph keep their own embedding.
4. p_ij is the inner product of the drug and target embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse import bmat, csr_matrix
from scipy.sparse.csgraph import shortest_path

from tether._errors import ConfigError, NumericError
from tether._types import DenseMatrix, InteractionMatrix
from tether.datasets.dti import DtiDataset
from tether.linalg import DEFAULT_TOLERANCES, psd_repair, sym_eigen
from tether.predictors._params import BgmParams, PairScore, PredictorConfig, ScoreMatrix
from tether.predictors._sweep import sweep_pairs
from tether.similarity import SimilaritySource, resolve


def graph_distances(interactions: InteractionMatrix) -> DenseMatrix:
    """Unweighted shortest-path lengths over drugs then targets (inf when unreachable)."""
    a = csr_matrix(np.asarray(interactions, dtype=np.float64))
    adjacency = bmat([[None, a], [a.T, None]], format="csr")
    return shortest_path(adjacency, method="D", directed=False, unweighted=True)


def graph_kernel(distances: DenseMatrix, bandwidth: float) -> DenseMatrix:
    """exp(-d²/h²), with infinite distances mapped to 0."""
    d = np.asarray(distances, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        k = np.exp(-(d * d) / (bandwidth * bandwidth))
    return np.where(np.isfinite(d), k, 0.0)


@dataclass(frozen=True, slots=True)
class BgmEmbedding:
    """Fitted embedding of every drug and target.

    Attributes:
        drugs: n_d x r drug coordinates.
        targets: n_t x r target coordinates.
        kernel: The repaired graph kernel over graph nodes (drugs first).
        graph_drugs: Drug indices present in the graph.
        graph_targets: Target indices present in the graph.
        factor: U with UUᵀ ≈ kernel.

    """

    drugs: DenseMatrix
    targets: DenseMatrix
    kernel: DenseMatrix
    graph_drugs: np.ndarray
    graph_targets: np.ndarray
    factor: DenseMatrix

    def scores(self) -> DenseMatrix:
        return self.drugs @ self.targets.T


def _ridge_map(s_train: DenseMatrix, u_train: DenseMatrix, ridge: float) -> DenseMatrix:
    """W = (SᵀS + λI)⁻¹ SᵀU."""
    gram = s_train.T @ s_train + ridge * np.eye(s_train.shape[1])
    try:
        return scipy.linalg.solve(gram, s_train.T @ u_train, assume_a="pos")
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        msg = f"BGM regression system is singular: {exc}"
        raise NumericError(msg) from exc


def bgm_embed(
    ds: DtiDataset,
    params: BgmParams,
    *,
    interactions: InteractionMatrix | None = None,
    source: SimilaritySource | None = None,
) -> BgmEmbedding:
    """Fit the embedding from *interactions* (default: the dataset's A).

    Raises:
        ConfigError: The interaction graph has no edges.

    """
    a = np.asarray(ds.interactions if interactions is None else interactions, dtype=np.int8)
    if not a.any():
        msg = "BGM needs at least one known interaction"
        raise ConfigError(msg)
    s_d, s_t = resolve(ds, source or SimilaritySource(), a)
    n_d, n_t = a.shape

    drug_nodes = np.flatnonzero(a.sum(axis=1) > 0)
    target_nodes = np.flatnonzero(a.sum(axis=0) > 0)
    nodes = np.concatenate([drug_nodes, n_d + target_nodes])
    distances = graph_distances(a)[np.ix_(nodes, nodes)]
    kernel = psd_repair(graph_kernel(distances, params.bandwidth))

    w, v = sym_eigen(kernel)
    keep = w > DEFAULT_TOLERANCES.psd_floor * max(1.0, float(w[0]))
    if params.embedding_dim is not None:
        keep &= np.arange(w.shape[0]) < params.embedding_dim
    factor = v[:, keep] * np.sqrt(w[keep])

    u_c = factor[: drug_nodes.shape[0]]
    u_g = factor[drug_nodes.shape[0] :]
    w_c = _ridge_map(s_d[np.ix_(drug_nodes, drug_nodes)], u_c, params.ridge)
    w_g = _ridge_map(s_t[np.ix_(target_nodes, target_nodes)], u_g, params.ridge)

    drugs = s_d[:, drug_nodes] @ w_c
    drugs[drug_nodes] = u_c
    targets = s_t[:, target_nodes] @ w_g
    targets[target_nodes] = u_g
    return BgmEmbedding(
        drugs=drugs,
        targets=targets,
        kernel=kernel,
        graph_drugs=drug_nodes,
        graph_targets=target_nodes,
        factor=factor,
    )


def bgm_fit_predict(
    ds: DtiDataset,
    params: BgmParams | None = None,
    *,
    interactions: InteractionMatrix | None = None,
    source: SimilaritySource | None = None,
) -> ScoreMatrix:
    """Score every pair from one embedding fitted on *interactions*."""
    config = PredictorConfig(method="bgm", bgm=params or BgmParams(), similarity=source or SimilaritySource())
    embedding = bgm_embed(ds, config.bgm, interactions=interactions, source=config.similarity)
    return ScoreMatrix(
        values=embedding.scores(),
        method="bgm",
        params=config.describe(),
        drug_ids=ds.drug_ids,
        target_ids=ds.target_ids,
    )


class BgmScorer:
    """Pair scorer for LOOCV.

    Masking a pair with no known interaction leaves A unchanged, so those
    pairs reuse the embedding of the full matrix.

    """

    __slots__ = ("_full", "ds", "params", "source")

    def __init__(self, ds: DtiDataset, params: BgmParams, source: SimilaritySource) -> None:
        self.ds = ds
        self.params = params
        self.source = source
        self._full = bgm_embed(ds, params, source=source).scores()

    def score_pair(self, a: InteractionMatrix, i: int, j: int) -> PairScore:
        if np.array_equal(a, self.ds.interactions):
            return PairScore(score=float(self._full[i, j]))
        embedding = bgm_embed(self.ds, self.params, interactions=a, source=self.source)
        return PairScore(score=float(embedding.drugs[i] @ embedding.targets[j]))


def bgm_sweep(ds: DtiDataset, config: PredictorConfig, *, mask: bool) -> ScoreMatrix:
    if not mask:
        return bgm_fit_predict(ds, config.bgm, source=config.similarity)
    scorer = BgmScorer(ds, config.bgm, config.similarity)
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
        method="bgm",
        params=config.describe(),
        drug_ids=ds.drug_ids,
        target_ids=ds.target_ids,
    )
