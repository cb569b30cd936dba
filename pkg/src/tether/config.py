"""Tether run configuration.

TetherConfig is the central configuration object, frozen after creation.
It holds every parameter of a CLI run; ``predictor_config()`` and
``classifier_config()`` turn it into the records the library takes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from tether._errors import ConfigError
from tether._types import CombineRule, InferringMode, Method, SimilarityKind
from tether.classifiers import Algorithm, ClassifierConfig
from tether.datasets.dti import BENCHMARKS, benchmark_paths
from tether.evaluation.metrics import AuprMethod
from tether.predictors import BgmParams, BlmParams, PredictorConfig
from tether.similarity import SimilaritySource

type Command = Literal["stats", "predict", "cv", "classify", "compare"]

COMMANDS: tuple[str, ...] = ("stats", "predict", "cv", "classify", "compare")
# Commands that read a DTI dataset
DTI_COMMANDS = frozenset({"stats", "predict", "cv", "compare"})
MULTI_DATASET_COMMANDS = frozenset({"stats", "compare"})


@dataclass(frozen=True, slots=True)
class DatasetSource:
    """Three matrix files that make up one DTI dataset."""

    name: str
    interactions: Path
    drug_similarity: Path
    target_similarity: Path


@dataclass(frozen=True, slots=True)
class TetherConfig:
    """Configuration for one tether run.

    Attributes:
        command: Which subcommand runs.
        root: Directory relative paths resolve against.  Always resolved
              to an absolute path on construction.
        interactions: Explicit interaction matrix file.
        drug_similarity: Explicit drug similarity file.
        target_similarity: Explicit target similarity file.
        dataset_dir: Directory holding the published benchmark files.
        names: Benchmarks to load from ``dataset_dir`` (``nr``, ``gpcr``,
            ``ic``, ``e``).  Only ``stats`` and ``compare`` accept more than one.
        method: DTI predictor.
        similarity: Similarity configuration.
        methods: Predictors ``compare`` runs (empty = ``method``).
        similarities: Similarity configurations ``compare`` runs
            (empty = ``similarity``).
        hybrid_weight: Weight on the chemical/sequence part of a hybrid.
        gip_bandwidth_scale: γ₀ of the network kernel.
        per_mask_similarity: Recompute network similarities per masked pair.
        bgm_bandwidth: Graph-kernel bandwidth h.
        embedding_dim: Leading BGM eigencomponents kept (None = all positive).
        bgm_ridge: Ridge weight of the similarity-to-embedding map.
        local_classifier: Algorithm trained per drug and per target.
        delta: RLS regularization weight δ.
        C: SVM penalty weight.
        combine: ``max`` or ``mean`` of the two directional scores.
        inferring_mode: ``linear`` or ``exponential`` neighbour weights.
        beta: β of the exponential mode.
        neighbor_threshold: Neighbours below this similarity get weight 0.
        aupr_method: ``average_precision`` or ``trapezoid``.
        table: CSV file for ``classify``.
        weather: ``classify`` the built-in Weather table instead.
        label_column: Label column of ``table`` (None = last column).
        kinds: File overriding inferred feature kinds of ``table``.
        algorithm: Classifier for ``classify``.
        holdout: Share of ``table`` held out for accuracy.
        seed: Single source of randomness.
        workers: Worker threads (1 reproduces any parallel run exactly).
        output: Directory for result files.
        verbose: Print per-stage timing.

    """

    command: Command = "cv"
    root: Path = field(default_factory=Path.cwd)
    interactions: Path | None = None
    drug_similarity: Path | None = None
    target_similarity: Path | None = None
    dataset_dir: Path | None = None
    names: tuple[str, ...] = ()
    method: Method = "blm"
    similarity: SimilarityKind = "chem_seq"
    methods: tuple[Method, ...] = ()
    similarities: tuple[SimilarityKind, ...] = ()
    hybrid_weight: float = 0.5
    gip_bandwidth_scale: float = 1.0
    per_mask_similarity: bool = True
    bgm_bandwidth: float = 1.0
    embedding_dim: int | None = None
    bgm_ridge: float = 1e-6
    local_classifier: Algorithm = "rls"
    delta: float = 1.0
    C: float = 1.0
    combine: CombineRule = "max"
    inferring_mode: InferringMode = "linear"
    beta: float = 1.0
    neighbor_threshold: float = 0.0
    aupr_method: AuprMethod = "average_precision"
    table: Path | None = None
    weather: bool = False
    label_column: str | None = None
    kinds: Path | None = None
    algorithm: Algorithm = "decision_tree"
    holdout: float = 0.3
    seed: int = 0
    workers: int = 1
    output: Path = field(default_factory=lambda: Path("results"))
    verbose: bool = False

    def __post_init__(self) -> None:
        if not self.root.is_absolute():
            object.__setattr__(self, "root", self.root.resolve())
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "similarities", tuple(self.similarities))

        if self.command not in COMMANDS:
            msg = f"unknown command {self.command!r}; expected one of {COMMANDS}"
            raise ConfigError(msg)
        if self.workers < 1:
            msg = f"workers must be >= 1, got {self.workers}"
            raise ConfigError(msg)
        if self.aupr_method not in ("average_precision", "trapezoid"):
            msg = f"aupr_method must be average_precision or trapezoid, got {self.aupr_method!r}"
            raise ConfigError(msg)
        if not 0.0 <= self.holdout < 1.0:
            msg = f"holdout must be in [0, 1), got {self.holdout}"
            raise ConfigError(msg)

        if self.command in DTI_COMMANDS:
            self.sources()
            for method in self.methods or (self.method,):
                for kind in self.similarities or (self.similarity,):
                    self.predictor_config(method, kind)
        elif self.command == "classify":
            if self.table is None and not self.weather:
                msg = "classify needs a table file or --weather"
                raise ConfigError(msg)
            self.classifier_config()

    # -- paths ---------------------------------------------------------------

    def _resolve(self, path: Path) -> Path:
        return path if path.is_absolute() else self.root / path

    @property
    def output_path(self) -> Path:
        """Absolute path to the output directory."""
        return self._resolve(self.output)

    @property
    def table_path(self) -> Path | None:
        return None if self.table is None else self._resolve(self.table)

    @property
    def kinds_path(self) -> Path | None:
        return None if self.kinds is None else self._resolve(self.kinds)

    def sources(self) -> list[DatasetSource]:
        """The datasets this run reads, in order.

        Raises:
            ConfigError: Neither explicit paths nor a benchmark directory
                are given, only some of the three explicit paths are, or
                a single-dataset command names several benchmarks.

        """
        explicit = (self.interactions, self.drug_similarity, self.target_similarity)
        given = [p is not None for p in explicit]
        if any(given) and not all(given):
            msg = "--interactions, --drug-sim and --target-sim must be given together"
            raise ConfigError(msg)
        if all(given) and (self.dataset_dir is not None or self.names):
            msg = "give either explicit dataset paths or --dataset-dir/--name, not both"
            raise ConfigError(msg)

        if all(given):
            a, sd, st = (self._resolve(p) for p in explicit if p is not None)
            return [DatasetSource(a.stem, a, sd, st)]

        if self.dataset_dir is None or not self.names:
            msg = f"{self.command} needs a dataset: explicit paths or --dataset-dir with --name"
            raise ConfigError(msg)
        if len(self.names) > 1 and self.command not in MULTI_DATASET_COMMANDS:
            msg = f"{self.command} takes one dataset, got {len(self.names)}"
            raise ConfigError(msg)
        out: list[DatasetSource] = []
        for name in self.names:
            if name.lower() not in BENCHMARKS:
                msg = f"unknown benchmark {name!r}; expected one of {sorted(set(BENCHMARKS))}"
                raise ConfigError(msg)
            a, sd, st = benchmark_paths(self._resolve(self.dataset_dir), name)
            out.append(DatasetSource(BENCHMARKS[name.lower()], a, sd, st))
        return out

    # -- library records -----------------------------------------------------

    def predictor_config(
        self, method: Method | None = None, similarity: SimilarityKind | None = None
    ) -> PredictorConfig:
        """PredictorConfig for *method* and *similarity* (default: this run's)."""
        local = ClassifierConfig(
            algorithm=self.local_classifier,
            delta=self.delta,
            C=self.C,
            seed=self.seed,
        )
        return PredictorConfig(
            method=method or self.method,
            similarity=SimilaritySource(
                kind=similarity or self.similarity,
                hybrid_weight=self.hybrid_weight,
                gip_bandwidth_scale=self.gip_bandwidth_scale,
                per_mask=self.per_mask_similarity,
            ),
            bgm=BgmParams(
                bandwidth=self.bgm_bandwidth,
                embedding_dim=self.embedding_dim,
                ridge=self.bgm_ridge,
            ),
            blm=BlmParams(
                local_classifier=local,
                combine=self.combine,
                inferring_mode=self.inferring_mode,
                beta=self.beta,
                neighbor_threshold=self.neighbor_threshold,
            ),
            workers=self.workers,
        )

    def classifier_config(self) -> ClassifierConfig:
        """ClassifierConfig for ``classify``."""
        return ClassifierConfig(
            algorithm=self.algorithm,
            delta=self.delta,
            C=self.C,
            seed=self.seed,
            workers=self.workers,
        )

    def runs(self) -> list[tuple[Method, SimilarityKind]]:
        """(method, similarity) combinations, similarities outermost."""
        return [
            (m, s)
            for s in (self.similarities or (self.similarity,))
            for m in (self.methods or (self.method,))
        ]
