"""Generic labeled tables for the classifier core.

A ``LabeledTable`` holds mixed categorical/numeric features and one class
label per row.  Class order is the order of first appearance; every
tie-break in the classifiers resolves toward the lower index in this
order.
"""

from __future__ import annotations

import csv
import math
import tomllib
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tether._errors import ConfigError, FormatError, InputError, ParseError
from tether._types import ClassLabel, FeatureKind, Row, RowValue


@dataclass(frozen=True, slots=True)
class LabeledTable:
    """n labeled examples D = {x_i, y_i}.

    Attributes:
        feature_names: Column names, in order.
        feature_kinds: ``categorical`` or ``numeric`` per column.
        rows: One value tuple per example (str for categorical, float for numeric).
        labels: One class id per example.

    """

    feature_names: tuple[str, ...]
    feature_kinds: tuple[FeatureKind, ...]
    rows: tuple[Row, ...]
    labels: tuple[ClassLabel, ...]

    def __post_init__(self) -> None:
        names = tuple(self.feature_names)
        kinds = tuple(self.feature_kinds)
        if len(names) != len(kinds):
            msg = f"{len(names)} feature names but {len(kinds)} feature kinds"
            raise InputError(msg)
        if any(k not in ("categorical", "numeric") for k in kinds):
            msg = f"feature kinds must be 'categorical' or 'numeric', got {kinds}"
            raise InputError(msg)
        rows = tuple(tuple(r) for r in self.rows)
        labels = tuple(str(y) for y in self.labels)
        if len(rows) != len(labels):
            msg = f"{len(rows)} rows but {len(labels)} labels"
            raise InputError(msg)
        checked: list[Row] = []
        for i, row in enumerate(rows):
            if len(row) != len(names):
                msg = f"row {i} has {len(row)} values, expected {len(names)}"
                raise InputError(msg)
            checked.append(_coerce_row(row, kinds, where=f"row {i}"))
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "feature_kinds", kinds)
        object.__setattr__(self, "rows", tuple(checked))
        object.__setattr__(self, "labels", labels)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    @property
    def classes(self) -> tuple[ClassLabel, ...]:
        """Distinct labels in order of first appearance."""
        return tuple(dict.fromkeys(self.labels))

    def feature_index(self, attribute: str | int) -> int:
        """Resolve a feature name or position to its position."""
        if isinstance(attribute, int):
            if not 0 <= attribute < self.n_features:
                msg = f"feature index {attribute} out of range"
                raise InputError(msg)
            return attribute
        try:
            return self.feature_names.index(attribute)
        except ValueError:
            msg = f"unknown feature {attribute!r}"
            raise InputError(msg) from None

    def column(self, attribute: str | int) -> tuple[RowValue, ...]:
        idx = self.feature_index(attribute)
        return tuple(row[idx] for row in self.rows)

    def subset(self, indices: Iterable[int]) -> LabeledTable:
        """Rows at *indices* (repeats allowed, as in a bootstrap draw)."""
        idx = list(indices)
        return LabeledTable(
            self.feature_names,
            self.feature_kinds,
            tuple(self.rows[i] for i in idx),
            tuple(self.labels[i] for i in idx),
        )

    def project(self, features: Sequence[int]) -> LabeledTable:
        """Keep only the feature columns at *features*."""
        return LabeledTable(
            tuple(self.feature_names[f] for f in features),
            tuple(self.feature_kinds[f] for f in features),
            tuple(tuple(row[f] for f in features) for row in self.rows),
            self.labels,
        )

    def schema(self) -> LabeledTable:
        """An empty table with this table's features, for validating queries."""
        return LabeledTable(self.feature_names, self.feature_kinds, (), ())

    def check_row(self, row: Sequence[RowValue]) -> Row:
        """Validate and coerce a query row against this table's schema."""
        if len(row) != self.n_features:
            msg = f"query row has {len(row)} values, schema has {self.n_features} features"
            raise InputError(msg)
        return _coerce_row(tuple(row), self.feature_kinds, where="query row")


def _coerce_row(row: Row, kinds: tuple[FeatureKind, ...], *, where: str) -> Row:
    out: list[RowValue] = []
    for value, kind in zip(row, kinds, strict=True):
        if kind == "numeric":
            try:
                number = float(value)
            except (TypeError, ValueError):
                msg = f"{where}: numeric feature has value {value!r}"
                raise InputError(msg) from None
            if not math.isfinite(number):
                msg = f"{where}: numeric feature is not finite"
                raise InputError(msg)
            out.append(number)
        else:
            out.append(str(value))
    return tuple(out)


# ---------------------------------------------------------------------------
# Built-in fixture
# ---------------------------------------------------------------------------

_WEATHER_ROWS: tuple[tuple[str, str, str, str, str], ...] = (
    ("Sunny", "Hot", "High", "False", "No"),
    ("Sunny", "Hot", "High", "True", "No"),
    ("Overcast", "Hot", "High", "False", "Yes"),
    ("Rainy", "Mild", "High", "False", "Yes"),
    ("Rainy", "Cool", "Normal", "False", "Yes"),
    ("Rainy", "Cool", "Normal", "True", "No"),
    ("Overcast", "Cool", "Normal", "True", "Yes"),
    ("Sunny", "Mild", "High", "False", "No"),
    ("Sunny", "Cool", "Normal", "False", "Yes"),
    ("Rainy", "Mild", "Normal", "False", "Yes"),
    ("Sunny", "Mild", "Normal", "True", "Yes"),
    ("Overcast", "Mild", "High", "True", "Yes"),
    ("Overcast", "Hot", "Normal", "False", "Yes"),
    ("Rainy", "Mild", "High", "True", "No"),
)


def weather_fixture() -> LabeledTable:
    """The 14-row Play/No weather table (rows in id order 1..14)."""
    return LabeledTable(
        feature_names=("Outlook", "Temperature", "Humidity", "Windy"),
        feature_kinds=("categorical",) * 4,
        rows=tuple(r[:4] for r in _WEATHER_ROWS),
        labels=tuple(r[4] for r in _WEATHER_ROWS),
    )


# ---------------------------------------------------------------------------
# CSV reader
# ---------------------------------------------------------------------------


def _is_number(token: str) -> bool:
    try:
        return math.isfinite(float(token))
    except ValueError:
        return False


def read_kinds_file(path: Path | str) -> dict[str, FeatureKind]:
    """Read a TOML override file: ``[kinds]`` table mapping feature -> kind."""
    try:
        data = tomllib.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, tomllib.TOMLDecodeError) as exc:
        msg = f"cannot read kinds file {path}: {exc}"
        raise FormatError(msg) from exc
    kinds = data.get("kinds", data)
    if not isinstance(kinds, dict):
        msg = f"{path}: expected a [kinds] table"
        raise FormatError(msg)
    out: dict[str, FeatureKind] = {}
    for name, kind in kinds.items():
        if kind not in ("categorical", "numeric"):
            msg = f"{path}: kind for {name!r} must be 'categorical' or 'numeric'"
            raise ConfigError(msg)
        out[str(name)] = kind
    return out


def read_table_csv(
    path: Path | str,
    *,
    label_column: str | None = None,
    kinds: Mapping[str, FeatureKind] | None = None,
) -> LabeledTable:
    """Read a CSV with a header row into a LabeledTable.

    The last column is the label unless *label_column* names another.
    A feature is numeric when every one of its tokens parses as a finite
    number; *kinds* overrides the inference per feature.

    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8-sig", newline="") as fh:
            records = [r for r in csv.reader(fh) if r and any(cell.strip() for cell in r)]
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise FormatError(msg) from exc
    if not records:
        msg = f"{path.name}: empty file"
        raise FormatError(msg)

    header = [h.strip() for h in records[0]]
    body = [[c.strip() for c in r] for r in records[1:]]
    label_idx = len(header) - 1 if label_column is None else _header_index(header, label_column, path)
    for lineno, r in enumerate(body, start=2):
        if len(r) != len(header):
            msg = f"{path.name}: line {lineno} has {len(r)} fields, header has {len(header)}"
            raise FormatError(msg)

    feature_idx = [i for i in range(len(header)) if i != label_idx]
    names = tuple(header[i] for i in feature_idx)
    overrides = dict(kinds or {})
    unknown = set(overrides) - set(names)
    if unknown:
        msg = f"kinds override names unknown feature {sorted(unknown)[0]!r}"
        raise ConfigError(msg)

    feature_kinds: list[FeatureKind] = []
    for name, i in zip(names, feature_idx, strict=True):
        inferred: FeatureKind = (
            "numeric" if body and all(_is_number(r[i]) for r in body) else "categorical"
        )
        kind = overrides.get(name, inferred)
        if kind == "numeric":
            for lineno, r in enumerate(body, start=2):
                if not _is_number(r[i]):
                    msg = f"{path.name}: numeric feature has value {r[i]!r}"
                    raise ParseError(msg, row=lineno, column=name)
        feature_kinds.append(kind)

    return LabeledTable(
        feature_names=names,
        feature_kinds=tuple(feature_kinds),
        rows=tuple(tuple(r[i] for i in feature_idx) for r in body),
        labels=tuple(r[label_idx] for r in body),
    )


def _header_index(header: list[str], column: str, path: Path) -> int:
    try:
        return header.index(column)
    except ValueError:
        msg = f"{path.name}: label column {column!r} not in header"
        raise FormatError(msg) from None


def split_holdout(
    table: LabeledTable, fraction: float, seed: int
) -> tuple[LabeledTable, LabeledTable]:
    """Seeded split into (train, holdout); holdout gets round(fraction * n) rows."""
    if not 0.0 <= fraction < 1.0:
        msg = f"holdout fraction must be in [0, 1), got {fraction}"
        raise ConfigError(msg)
    n = table.n_rows
    order = np.random.default_rng(seed).permutation(n)
    n_hold = round(fraction * n)
    if n_hold >= n:
        n_hold = n - 1
    hold = sorted(order[:n_hold].tolist())
    train = sorted(order[n_hold:].tolist())
    return table.subset(train), table.subset(hold)
