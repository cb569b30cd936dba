"""Similarity sources for drugs and targets.

Three configurations are supported:

- ``chem_seq``: the chemical (drug) and sequence (target) similarities
  shipped with the dataset.
- ``network_based``: Gaussian kernels over interaction profiles,
  recomputed from whatever interaction matrix the caller passes (the
  masked one during LOOCV).
- ``hybrid``: ``w * chem_seq + (1 - w) * network_based``.

The network kernel is exp(-γ‖a_i - a_j‖²) with γ = γ₀ · m / Σ‖a_i‖²,
where a_i are the m interaction profiles on the chosen side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from tether._errors import ConfigError, InputError
from tether._types import DenseMatrix, InteractionMatrix, Side, SimilarityKind
from tether.datasets.dti import DtiDataset
from tether.linalg import DEFAULT_TOLERANCES, Tolerances, psd_repair

SIMILARITY_KINDS: tuple[str, ...] = ("chem_seq", "network_based", "hybrid")


@dataclass(frozen=True, slots=True)
class SimilaritySource:
    """Which similarities the predictors use.

    Attributes:
        kind: ``chem_seq``, ``network_based`` or ``hybrid``.
        hybrid_weight: Weight w on the chemical/sequence part of a hybrid.
        gip_bandwidth_scale: γ₀ for the network kernel.
        per_mask: Recompute network similarities from each masked matrix.
            False computes them once from the full matrix, which leaks the
            held-out entry and exists only for comparison.

    """

    kind: SimilarityKind = "chem_seq"
    hybrid_weight: float = 0.5
    gip_bandwidth_scale: float = 1.0
    per_mask: bool = True

    def __post_init__(self) -> None:
        if self.kind not in SIMILARITY_KINDS:
            msg = f"unknown similarity {self.kind!r}; expected one of {SIMILARITY_KINDS}"
            raise ConfigError(msg)
        if not 0.0 <= self.hybrid_weight <= 1.0:
            msg = f"hybrid_weight must be in [0, 1], got {self.hybrid_weight}"
            raise ConfigError(msg)
        if not self.gip_bandwidth_scale > 0:
            msg = f"gip_bandwidth_scale must be > 0, got {self.gip_bandwidth_scale}"
            raise ConfigError(msg)

    @property
    def uses_network(self) -> bool:
        return self.kind != "chem_seq"

    @property
    def varies_with_mask(self) -> bool:
        """True when masking an entry of A changes the similarities."""
        return self.uses_network and self.per_mask


def network_similarity(
    interactions: InteractionMatrix, side: Side, gamma0: float = 1.0
) -> DenseMatrix:
    """Gaussian interaction-profile similarity for drugs (rows) or targets (columns).

    Raises:
        ConfigError: A has no interactions, so the bandwidth is undefined.

    """
    if side not in ("drugs", "targets"):
        msg = f"side must be 'drugs' or 'targets', got {side!r}"
        raise ConfigError(msg)
    if not gamma0 > 0:
        msg = f"gamma0 must be > 0, got {gamma0}"
        raise ConfigError(msg)
    a = np.asarray(interactions, dtype=np.float64)
    profiles = a if side == "drugs" else a.T
    total = float(np.sum(profiles * profiles))
    if total == 0.0:
        msg = "network similarity is undefined for an interaction matrix with no interactions"
        raise ConfigError(msg)
    gamma = gamma0 * profiles.shape[0] / total
    if profiles.shape[0] == 1:
        return np.ones((1, 1))
    sq = squareform(pdist(profiles, metric="sqeuclidean"))
    return np.exp(-gamma * sq)


def combine(sim_bio: DenseMatrix, sim_net: DenseMatrix, w: float = 0.5) -> DenseMatrix:
    """w * sim_bio + (1 - w) * sim_net, symmetrized."""
    sim_bio = np.asarray(sim_bio, dtype=np.float64)
    sim_net = np.asarray(sim_net, dtype=np.float64)
    if sim_bio.shape != sim_net.shape:
        msg = f"cannot combine similarities of shape {sim_bio.shape} and {sim_net.shape}"
        raise InputError(msg)
    if not 0.0 <= w <= 1.0:
        msg = f"combination weight must be in [0, 1], got {w}"
        raise ConfigError(msg)
    out = w * sim_bio + (1.0 - w) * sim_net
    return 0.5 * (out + out.T)


def as_kernel(s: DenseMatrix, *, tol: Tolerances = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Similarity matrix projected onto the PSD cone."""
    return psd_repair(s, tol=tol)


def resolve(
    ds: DtiDataset,
    source: SimilaritySource,
    interactions: InteractionMatrix | None = None,
) -> tuple[DenseMatrix, DenseMatrix]:
    """Drug and target similarity for *source*, built from *interactions*.

    *interactions* defaults to the dataset's own matrix; LOOCV passes the
    masked copy.  With ``per_mask`` off the network part always comes from
    the full matrix.

    """
    if source.kind == "chem_seq":
        return ds.drug_similarity, ds.target_similarity
    a = ds.interactions if interactions is None or not source.per_mask else interactions
    net_d = network_similarity(a, "drugs", source.gip_bandwidth_scale)
    net_t = network_similarity(a, "targets", source.gip_bandwidth_scale)
    if source.kind == "network_based":
        return net_d, net_t
    w = source.hybrid_weight
    return combine(ds.drug_similarity, net_d, w), combine(ds.target_similarity, net_t, w)
