"""Shared type definitions for tether."""

from typing import Literal

import numpy as np
from numpy.typing import NDArray

# Dense real matrix or vector (row-major float64)
type DenseMatrix = NDArray[np.float64]
type RealVector = NDArray[np.float64]

# Binary n_d x n_t matrix of known interactions
type InteractionMatrix = NDArray[np.int8]

# Which side of the bipartite network a node lives on
type Side = Literal["drugs", "targets"]

# DTI prediction methods
type Method = Literal["bgm", "blm", "blmn"]

# Similarity configurations (CLI spelling)
type SimilarityKind = Literal["chem_seq", "network_based", "hybrid"]

# Combination function f for the two directional BLM scores
type CombineRule = Literal["max", "mean"]

# Neighbour-weighting rule for inferred interaction profiles
type InferringMode = Literal["linear", "exponential"]

# Feature kinds in a LabeledTable
type FeatureKind = Literal["categorical", "numeric"]

# Class identifier in a LabeledTable
type ClassLabel = str

# A single table row: categorical values are str, numeric are float
type RowValue = str | float
type Row = tuple[RowValue, ...]
