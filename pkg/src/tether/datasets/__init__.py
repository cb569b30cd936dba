"""Datasets — DTI benchmark ingestion, statistics, and labeled tables."""

from tether.datasets.dti import (
    DatasetStats,
    DtiDataset,
    benchmark_paths,
    load_benchmark,
    load_dti,
    normalize_similarity,
    save_dti,
    stats,
)
from tether.datasets.table import (
    LabeledTable,
    read_kinds_file,
    read_table_csv,
    split_holdout,
    weather_fixture,
)
from tether.datasets.tsv import LabeledMatrix, convert_csv, read_matrix_tsv, write_matrix_tsv

__all__ = [
    "DatasetStats",
    "DtiDataset",
    "LabeledMatrix",
    "LabeledTable",
    "benchmark_paths",
    "convert_csv",
    "load_benchmark",
    "load_dti",
    "normalize_similarity",
    "read_kinds_file",
    "read_matrix_tsv",
    "read_table_csv",
    "save_dti",
    "split_holdout",
    "stats",
    "weather_fixture",
    "write_matrix_tsv",
]
