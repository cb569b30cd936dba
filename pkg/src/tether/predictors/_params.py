"""Parameter records and result types shared by the DTI predictors."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field, replace

import numpy as np

from tether._errors import ConfigError, InputError
from tether._types import CombineRule, DenseMatrix, InferringMode, Method
from tether.classifiers import ClassifierConfig
from tether.similarity import SimilaritySource

METHODS: tuple[str, ...] = ("bgm", "blm", "blmn")


@dataclass(frozen=True, slots=True)
class BgmParams:
    """Bipartite graph model settings.

    Attributes:
        bandwidth: h in exp(-d²/h²), in graph-distance units.
        embedding_dim: Leading eigencomponents kept (None = every
            component with a positive eigenvalue).
        ridge: λ of the ridge regression from similarity rows to embeddings.

    """

    bandwidth: float = 1.0
    embedding_dim: int | None = None
    ridge: float = 1e-6

    def __post_init__(self) -> None:
        if not self.bandwidth > 0:
            msg = f"BGM bandwidth h must be > 0, got {self.bandwidth}"
            raise ConfigError(msg)
        if self.embedding_dim is not None and self.embedding_dim < 1:
            msg = f"embedding_dim must be >= 1, got {self.embedding_dim}"
            raise ConfigError(msg)
        if not self.ridge > 0:
            msg = f"BGM ridge must be > 0, got {self.ridge}"
            raise ConfigError(msg)


def _default_local() -> ClassifierConfig:
    return ClassifierConfig(algorithm="rls", delta=1.0)


@dataclass(frozen=True, slots=True)
class BlmParams:
    """Bipartite local model settings.

    Attributes:
        local_classifier: Classifier trained per drug and per target.
        combine: ``max`` or ``mean`` of the two directional scores.
        neighbor_inferring: Infer soft labels for a node whose (masked)
            interaction profile is empty.  This is what turns BLM into BLMN.
        inferring_mode: ``linear`` (similarity weights) or ``exponential``
            (e^{s/β} weights).
        beta: β of the exponential mode.
        neighbor_threshold: Neighbours less similar than this get weight 0.

    """

    local_classifier: ClassifierConfig = field(default_factory=_default_local)
    combine: CombineRule = "max"
    neighbor_inferring: bool = False
    inferring_mode: InferringMode = "linear"
    beta: float = 1.0
    neighbor_threshold: float = 0.0

    def __post_init__(self) -> None:
        if self.combine not in ("max", "mean"):
            msg = f"combine must be 'max' or 'mean', got {self.combine!r}"
            raise ConfigError(msg)
        if self.inferring_mode not in ("linear", "exponential"):
            msg = f"inferring_mode must be 'linear' or 'exponential', got {self.inferring_mode!r}"
            raise ConfigError(msg)
        if not self.beta > 0:
            msg = f"beta must be > 0, got {self.beta}"
            raise ConfigError(msg)
        if not 0.0 <= self.neighbor_threshold < 1.0:
            msg = f"neighbor_threshold must be in [0, 1), got {self.neighbor_threshold}"
            raise ConfigError(msg)


@dataclass(frozen=True, slots=True)
class PredictorConfig:
    """Everything a predictor needs besides the dataset."""

    method: Method = "blm"
    similarity: SimilaritySource = field(default_factory=SimilaritySource)
    bgm: BgmParams = field(default_factory=BgmParams)
    blm: BlmParams = field(default_factory=BlmParams)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            msg = f"unknown method {self.method!r}; expected one of {METHODS}"
            raise ConfigError(msg)
        if self.workers < 1:
            msg = f"workers must be >= 1, got {self.workers}"
            raise ConfigError(msg)

    @property
    def local_params(self) -> BlmParams:
        """BLM parameters with neighbour inferring set by the method."""
        return replace(self.blm, neighbor_inferring=self.method == "blmn")

    def describe(self) -> dict[str, str]:
        """Flat parameter record for report headers."""
        out = {
            "method": self.method,
            "similarity": self.similarity.kind,
            "hybrid_weight": repr(self.similarity.hybrid_weight),
            "gip_bandwidth_scale": repr(self.similarity.gip_bandwidth_scale),
            "per_mask_similarity": str(self.similarity.per_mask).lower(),
        }
        if self.method == "bgm":
            out |= {
                "bgm_bandwidth": repr(self.bgm.bandwidth),
                "embedding_dim": "all" if self.bgm.embedding_dim is None else str(self.bgm.embedding_dim),
                "bgm_ridge": repr(self.bgm.ridge),
            }
        else:
            local = self.blm.local_classifier
            out |= {
                "local_classifier": local.algorithm,
                "delta": repr(local.delta),
                "C": repr(local.C),
                "combine": self.blm.combine,
                "neighbor_inferring": str(self.method == "blmn").lower(),
                "inferring_mode": self.blm.inferring_mode,
                "beta": repr(self.blm.beta),
                "neighbor_threshold": repr(self.blm.neighbor_threshold),
            }
        return out


@dataclass(frozen=True, slots=True)
class PairScore:
    """One pair's score with per-side diagnostics.

    Attributes:
        score: Combined score p_ij.
        drug_score: p^{d→t}, from the local model of the drug.
        target_score: p^{t→d}, from the local model of the target.
        drug_no_training_data: The drug's profile had no positives.
        target_no_training_data: The target's profile had no positives.
        drug_inferred: The drug's labels came from neighbour inferring.
        target_inferred: The target's labels came from neighbour inferring.

    """

    score: float
    drug_score: float = 0.0
    target_score: float = 0.0
    drug_no_training_data: bool = False
    target_no_training_data: bool = False
    drug_inferred: bool = False
    target_inferred: bool = False

    @property
    def inferred(self) -> bool:
        return self.drug_inferred or self.target_inferred

    @property
    def no_training_data(self) -> bool:
        return self.drug_no_training_data or self.target_no_training_data


@dataclass(frozen=True, slots=True)
class ScoreMatrix:
    """Predicted scores p_ij for every drug-target pair.

    Attributes:
        values: n_d x n_t finite scores (read-only).
        method: Predictor that produced the scores.
        params: Flat parameter record echoed into output headers.
        drug_ids: Row ids.
        target_ids: Column ids.
        n_inferred: Pairs for which neighbour inferring fired.

    """

    values: DenseMatrix
    method: str
    params: Mapping[str, str]
    drug_ids: tuple[str, ...]
    target_ids: tuple[str, ...]
    n_inferred: int = 0

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=np.float64)
        if v.shape != (len(self.drug_ids), len(self.target_ids)):
            msg = f"score matrix is {v.shape}, ids give ({len(self.drug_ids)}, {len(self.target_ids)})"
            raise InputError(msg)
        if not np.all(np.isfinite(v)):
            msg = "score matrix contains NaN or Inf"
            raise InputError(msg)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "drug_ids", tuple(self.drug_ids))
        object.__setattr__(self, "target_ids", tuple(self.target_ids))
        object.__setattr__(self, "params", dict(self.params))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.drug_ids), len(self.target_ids))
