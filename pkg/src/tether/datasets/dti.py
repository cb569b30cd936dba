"""Drug-target interaction datasets.

A ``DtiDataset`` bundles the binary interaction matrix A (drugs x targets)
with the drug-drug similarity S_d and target-target similarity S_t, all
aligned to one ordering of drug and target ids.

Loading matches ids by header string, never by position, and runs a
normalization pass on similarities: symmetrize as (S + Sᵀ)/2, clamp to
[0, 1], set the diagonal to 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tether._errors import FormatError, InputError, ParseError
from tether._types import DenseMatrix, InteractionMatrix
from tether.datasets.tsv import LabeledMatrix, read_matrix_tsv, write_matrix_tsv
from tether.observability import get_collector

# Asymmetry up to this size is symmetrized silently; above it a notice is recorded
ASYMMETRY_NOTICE = 1e-6

# Short names of the published benchmark files
BENCHMARKS: dict[str, str] = {
    "enzyme": "e",
    "e": "e",
    "ion_channel": "ic",
    "ic": "ic",
    "gpcr": "gpcr",
    "nuclear_receptor": "nr",
    "nr": "nr",
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, slots=True)
class DtiDataset:
    """Interaction matrix plus aligned drug and target similarities.

    Attributes:
        drug_ids: Drug identifiers, one per row of A.
        target_ids: Target identifiers, one per column of A.
        interactions: Binary n_d x n_t matrix A (int8, read-only).
        drug_similarity: Symmetric n_d x n_d S_d in [0, 1], unit diagonal.
        target_similarity: Symmetric n_t x n_t S_t in [0, 1], unit diagonal.
        name: Optional dataset label used in reports.

    """

    drug_ids: tuple[str, ...]
    target_ids: tuple[str, ...]
    interactions: InteractionMatrix
    drug_similarity: DenseMatrix
    target_similarity: DenseMatrix
    name: str = ""

    def __post_init__(self) -> None:
        a = np.asarray(self.interactions)
        n_d, n_t = len(self.drug_ids), len(self.target_ids)
        if a.shape != (n_d, n_t):
            msg = f"interaction matrix is {a.shape}, ids give ({n_d}, {n_t})"
            raise InputError(msg)
        if not np.all((a == 0) | (a == 1)):
            msg = "interaction matrix entries must be 0 or 1"
            raise InputError(msg)
        for label, s, n in (
            ("drug", self.drug_similarity, n_d),
            ("target", self.target_similarity, n_t),
        ):
            s = np.asarray(s)
            if s.shape != (n, n):
                msg = f"{label} similarity is {s.shape}, expected ({n}, {n})"
                raise InputError(msg)
            if not np.all(np.isfinite(s)):
                msg = f"{label} similarity contains NaN or Inf"
                raise InputError(msg)
        object.__setattr__(self, "drug_ids", tuple(self.drug_ids))
        object.__setattr__(self, "target_ids", tuple(self.target_ids))
        object.__setattr__(self, "interactions", _frozen(a.astype(np.int8)))
        object.__setattr__(
            self, "drug_similarity", _frozen(np.asarray(self.drug_similarity, dtype=np.float64))
        )
        object.__setattr__(
            self, "target_similarity", _frozen(np.asarray(self.target_similarity, dtype=np.float64))
        )

    @property
    def n_drugs(self) -> int:
        return len(self.drug_ids)

    @property
    def n_targets(self) -> int:
        return len(self.target_ids)

    @property
    def n_pairs(self) -> int:
        return self.n_drugs * self.n_targets


@dataclass(frozen=True, slots=True)
class DatasetStats:
    """Summary statistics in the layout of the benchmark statistics table.

    Degree means use n_d and n_t as denominators; percentages are of all
    drugs (targets) in the file.

    """

    n_drugs: int
    n_targets: int
    n_interactions: int
    mean_drug_degree: float
    mean_target_degree: float
    pct_drug_degree_one: float
    pct_target_degree_one: float

    def as_row(self) -> dict[str, str]:
        """Table cells: counts exact, means and percentages to two decimals."""
        return {
            "n_d": str(self.n_drugs),
            "n_t": str(self.n_targets),
            "E": str(self.n_interactions),
            "mean_D_d": f"{self.mean_drug_degree:.2f}",
            "mean_D_t": f"{self.mean_target_degree:.2f}",
            "D_d=1 (%)": f"{self.pct_drug_degree_one:.2f}",
            "D_t=1 (%)": f"{self.pct_target_degree_one:.2f}",
        }


def stats(ds: DtiDataset) -> DatasetStats:
    """Counts, mean degrees and degree-one percentages of a dataset."""
    a = ds.interactions.astype(np.int64)
    e = int(a.sum())
    drug_deg = a.sum(axis=1)
    target_deg = a.sum(axis=0)
    n_d, n_t = ds.n_drugs, ds.n_targets
    return DatasetStats(
        n_drugs=n_d,
        n_targets=n_t,
        n_interactions=e,
        mean_drug_degree=e / n_d if n_d else 0.0,
        mean_target_degree=e / n_t if n_t else 0.0,
        pct_drug_degree_one=100.0 * float(np.sum(drug_deg == 1)) / n_d if n_d else 0.0,
        pct_target_degree_one=100.0 * float(np.sum(target_deg == 1)) / n_t if n_t else 0.0,
    )


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def normalize_similarity(s: DenseMatrix, *, source: str = "similarity") -> DenseMatrix:
    """Symmetrize, clamp to [0, 1] and set a unit diagonal."""
    s = np.asarray(s, dtype=np.float64)
    asymmetry = float(np.max(np.abs(s - s.T))) if s.size else 0.0
    if asymmetry > ASYMMETRY_NOTICE:
        get_collector().warn(
            "datasets.dti", f"{source}: asymmetry {asymmetry:.3g} symmetrized as (S + S^T)/2"
        )
    out = np.clip(0.5 * (s + s.T), 0.0, 1.0)
    np.fill_diagonal(out, 1.0)
    return out


def _square_similarity(m: LabeledMatrix, path: Path) -> tuple[tuple[str, ...], DenseMatrix]:
    """Align a similarity file's rows to its column order."""
    if len(m.row_ids) != len(m.col_ids):
        msg = f"{path.name}: similarity matrix is {len(m.row_ids)}x{len(m.col_ids)}, not square"
        raise FormatError(msg)
    index = {rid: r for r, rid in enumerate(m.row_ids)}
    for cid in m.col_ids:
        if cid not in index:
            msg = f"{path.name}: id {cid!r} appears as a column but not as a row"
            raise FormatError(msg)
    order = [index[cid] for cid in m.col_ids]
    return m.col_ids, m.values[order, :]


def _reorder(
    ids: tuple[str, ...], wanted: tuple[str, ...], values: DenseMatrix, path: Path
) -> DenseMatrix:
    index = {i: k for k, i in enumerate(ids)}
    missing = [w for w in wanted if w not in index]
    if missing:
        msg = f"{path.name}: id {missing[0]!r} from the interaction file has no similarity row"
        raise FormatError(msg)
    extra = [i for i in ids if i not in set(wanted)]
    if extra:
        msg = f"{path.name}: id {extra[0]!r} has no entry in the interaction file"
        raise FormatError(msg)
    order = [index[w] for w in wanted]
    return values[np.ix_(order, order)]


def load_dti(
    interaction_path: Path | str,
    drug_sim_path: Path | str,
    target_sim_path: Path | str,
    *,
    name: str = "",
) -> DtiDataset:
    """Load and validate a DTI dataset from three TSV matrix files.

    A target-major interaction file (rows are targets, as in the published
    benchmark distribution) is detected by id matching and transposed.

    Raises:
        FormatError: Ids in the interaction file do not match the
            similarity files (the message names the offending id).
        ParseError: Non-numeric cell, or an interaction value outside {0, 1}.

    """
    t0 = time.perf_counter()
    interaction_path = Path(interaction_path)
    drug_sim_path = Path(drug_sim_path)
    target_sim_path = Path(target_sim_path)

    adj = read_matrix_tsv(interaction_path)
    drug_ids_s, s_d = _square_similarity(read_matrix_tsv(drug_sim_path), drug_sim_path)
    target_ids_s, s_t = _square_similarity(read_matrix_tsv(target_sim_path), target_sim_path)

    bad = np.argwhere((adj.values != 0) & (adj.values != 1))
    if bad.size:
        r, c = (int(i) for i in bad[0])
        msg = (
            f"{interaction_path.name}: interaction value {float(adj.values[r, c])!r} for "
            f"row {adj.row_ids[r]!r} is not 0 or 1"
        )
        line = adj.row_lines[r] if adj.row_lines else None
        raise ParseError(msg, row=line, column=adj.col_ids[c])

    rows, cols, a = adj.row_ids, adj.col_ids, adj.values
    transposed = False
    drug_set, target_set = set(drug_ids_s), set(target_ids_s)
    if set(rows) != drug_set and set(rows) == target_set and set(cols) == drug_set:
        rows, cols, a = cols, rows, a.T
        transposed = True
        get_collector().info(
            "datasets.dti", f"{interaction_path.name}: rows are targets; transposed to drugs x targets"
        )

    s_d = _reorder(drug_ids_s, rows, s_d, drug_sim_path)
    s_t = _reorder(target_ids_s, cols, s_t, target_sim_path)

    ds = DtiDataset(
        drug_ids=rows,
        target_ids=cols,
        interactions=a.astype(np.int8),
        drug_similarity=normalize_similarity(s_d, source=drug_sim_path.name),
        target_similarity=normalize_similarity(s_t, source=target_sim_path.name),
        name=name or interaction_path.stem,
    )
    get_collector().record_dataset(
        str(interaction_path),
        n_drugs=ds.n_drugs,
        n_targets=ds.n_targets,
        n_interactions=int(ds.interactions.sum()),
        transposed=transposed,
        load_ms=(time.perf_counter() - t0) * 1000,
    )
    return ds


def benchmark_paths(directory: Path | str, name: str) -> tuple[Path, Path, Path]:
    """Resolve the published file names for a benchmark (``nr``, ``gpcr``, ``ic``, ``e``)."""
    key = BENCHMARKS.get(name.lower())
    if key is None:
        msg = f"unknown benchmark {name!r}; expected one of {sorted(set(BENCHMARKS))}"
        raise FormatError(msg)
    directory = Path(directory)
    return (
        directory / f"{key}_admat_dgc.txt",
        directory / f"{key}_simmat_dc.txt",
        directory / f"{key}_simmat_dg.txt",
    )


def load_benchmark(directory: Path | str, name: str) -> DtiDataset:
    """Load one of the four published benchmarks from *directory*."""
    a, sd, st = benchmark_paths(directory, name)
    return load_dti(a, sd, st, name=BENCHMARKS[name.lower()])


def save_dti(ds: DtiDataset, directory: Path | str, *, prefix: str = "") -> tuple[Path, Path, Path]:
    """Write a dataset as three TSV files that ``load_dti`` reads back exactly."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = prefix or ds.name or "dataset"
    a = write_matrix_tsv(
        directory / f"{stem}_admat.tsv", ds.drug_ids, ds.target_ids, ds.interactions, integral=True
    )
    sd = write_matrix_tsv(
        directory / f"{stem}_simmat_drugs.tsv", ds.drug_ids, ds.drug_ids, ds.drug_similarity
    )
    st = write_matrix_tsv(
        directory / f"{stem}_simmat_targets.tsv", ds.target_ids, ds.target_ids, ds.target_similarity
    )
    return a, sd, st
