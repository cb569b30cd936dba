"""Shared test fixtures for tether."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from pathlib import Path

import numpy as np
import pytest
from scipy.spatial.distance import pdist, squareform

from tether.datasets import DtiDataset, LabeledTable, save_dti, weather_fixture
from tether.observability import RunCollector, use_collector


def gaussian_similarity(n: int, seed: int) -> np.ndarray:
    """Symmetric PSD similarity in (0, 1] with a unit diagonal."""
    points = np.random.default_rng(seed).normal(size=(n, 3))
    return np.exp(-0.5 * squareform(pdist(points, metric="sqeuclidean")))


def make_dataset(a: list[list[int]] | np.ndarray, *, seed: int = 0, name: str = "toy") -> DtiDataset:
    """Dataset over interaction matrix *a* with seeded Gaussian similarities."""
    a = np.asarray(a, dtype=np.int8)
    n_d, n_t = a.shape
    return DtiDataset(
        drug_ids=tuple(f"D{i + 1}" for i in range(n_d)),
        target_ids=tuple(f"T{j + 1}" for j in range(n_t)),
        interactions=a,
        drug_similarity=gaussian_similarity(n_d, seed),
        target_similarity=gaussian_similarity(n_t, seed + 1),
        name=name,
    )


@pytest.fixture
def toy_ds() -> DtiDataset:
    """Five drugs, four targets; D5 and T4 have a single interaction each."""
    return make_dataset(
        [
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [0, 1, 1, 0],
            [1, 1, 0, 0],
            [0, 0, 0, 1],
        ]
    )


@pytest.fixture
def dense_ds() -> DtiDataset:
    """Every drug and every target has at least two interactions."""
    return make_dataset(
        [
            [1, 1, 0, 0, 0],
            [0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 1],
            [1, 0, 0, 0, 1],
            [1, 0, 1, 0, 1],
        ],
        seed=3,
        name="dense",
    )


@pytest.fixture
def dataset_files(tmp_path: Path, toy_ds: DtiDataset) -> tuple[Path, Path, Path]:
    """The toy dataset written as three TSV files."""
    return save_dti(toy_ds, tmp_path / "data", prefix="toy")


@pytest.fixture
def weather() -> LabeledTable:
    return weather_fixture()


@pytest.fixture
def collector() -> Iterator[RunCollector]:
    """A fresh collector installed as the active one."""
    with use_collector(RunCollector()) as c:
        yield c


@pytest.fixture
def make_ds() -> Callable[..., DtiDataset]:
    """Factory: ``make_ds(a, seed=0, name="toy")`` builds a dataset over *a*."""
    return make_dataset
