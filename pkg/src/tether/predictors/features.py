"""Pair features for treating DTI prediction as binary classification.

A pair (i, j) is described, for each (drug similarity, target similarity)
source, by how close it is to the known interactions other than itself:

    max over known (d', t') ≠ (i, j) of sqrt(S_d[i, d'] · S_t[j, t'])

or the mean of the same quantity.  ``pair_feature_table`` turns every
pair into a row of a LabeledTable so any classifier (logistic regression
in the classic pipeline) can be trained on it.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np

from tether._errors import ConfigError
from tether._types import DenseMatrix, InteractionMatrix, RealVector
from tether.datasets.dti import DtiDataset
from tether.datasets.table import LabeledTable
from tether.observability import get_collector
from tether.similarity import network_similarity

type Aggregation = Literal["max", "mean"]
type FeatureSource = tuple[str, DenseMatrix, DenseMatrix]


def feature_sources(
    ds: DtiDataset,
    *,
    include_network: bool = False,
    interactions: InteractionMatrix | None = None,
) -> tuple[FeatureSource, ...]:
    """Named (S_d, S_t) pairs: chem/seq, plus every pairing with network similarity."""
    sources: list[FeatureSource] = [("chem_seq", ds.drug_similarity, ds.target_similarity)]
    if include_network:
        a = ds.interactions if interactions is None else interactions
        net_d = network_similarity(a, "drugs")
        net_t = network_similarity(a, "targets")
        sources += [
            ("chem_net", ds.drug_similarity, net_t),
            ("net_seq", net_d, ds.target_similarity),
            ("net_net", net_d, net_t),
        ]
    return tuple(sources)


def pair_features(
    ds: DtiDataset,
    i: int,
    j: int,
    aggregation: Aggregation = "max",
    *,
    interactions: InteractionMatrix | None = None,
    sources: Sequence[FeatureSource] | None = None,
) -> RealVector:
    """One feature per similarity source for pair (i, j).

    With no known interaction other than (i, j) the result is a zero
    vector and a notice is recorded.

    """
    if aggregation not in ("max", "mean"):
        msg = f"aggregation must be 'max' or 'mean', got {aggregation!r}"
        raise ConfigError(msg)
    a = np.asarray(ds.interactions if interactions is None else interactions)
    sources = feature_sources(ds) if sources is None else sources
    known_d, known_t = np.nonzero(a)
    others = ~((known_d == i) & (known_t == j))
    known_d, known_t = known_d[others], known_t[others]
    if known_d.size == 0:
        get_collector().warn(
            "predictors.features", f"pair ({i}, {j}): no other known interaction; features are 0"
        )
        return np.zeros(len(sources))
    out = np.empty(len(sources))
    for k, (_, s_d, s_t) in enumerate(sources):
        values = np.sqrt(np.clip(s_d[i, known_d] * s_t[j, known_t], 0.0, None))
        out[k] = values.max() if aggregation == "max" else values.mean()
    return out


def pair_feature_table(
    ds: DtiDataset,
    *,
    aggregation: Aggregation = "max",
    include_network: bool = False,
    pairs: Iterable[tuple[int, int]] | None = None,
) -> LabeledTable:
    """Feature table over *pairs* (default: all), labelled ``"0"``/``"1"`` from A."""
    sources = feature_sources(ds, include_network=include_network)
    if pairs is None:
        pairs = ((i, j) for i in range(ds.n_drugs) for j in range(ds.n_targets))
    rows: list[tuple[float, ...]] = []
    labels: list[str] = []
    for i, j in pairs:
        rows.append(tuple(pair_features(ds, i, j, aggregation, sources=sources).tolist()))
        labels.append(str(int(ds.interactions[i, j])))
    return LabeledTable(
        feature_names=tuple(name for name, _, _ in sources),
        feature_kinds=("numeric",) * len(sources),
        rows=tuple(rows),
        labels=tuple(labels),
    )
