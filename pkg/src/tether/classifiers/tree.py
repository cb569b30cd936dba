"""Decision trees: multiway categorical splits, binary numeric thresholds.

Growth is greedy.  At each node every attribute with more than one
distinct value in the node is scored by its impurity decrease (entropy
gives information gain, gini the Gini decrease) and the best one wins;
equal scores go to the lower attribute index.  A node becomes a leaf when
it is pure, when no attribute can split it, or at ``max_depth``.

Numeric attributes split at midpoints between consecutive sorted distinct
values: ``x < t`` goes left.  Categorical branches are created for the
values present in the node; a query with an unseen value stops at that
node and is answered from its class counts.

Reduced-error pruning grows on a seeded training share and collapses any
subtree whose held-out error is no better than a leaf's.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from tether._errors import ConfigError
from tether._types import ClassLabel, Row
from tether.classifiers._base import ClassifierConfig, Prediction, make_prediction, require_rows
from tether.datasets.table import LabeledTable, split_holdout

# Gains closer than this count as equal, so the lower index wins
GAIN_TIE = 1e-12


# ---------------------------------------------------------------------------
# Impurity
# ---------------------------------------------------------------------------


def _proportions(labels: Sequence[ClassLabel]) -> np.ndarray:
    _, counts = np.unique(np.asarray(labels, dtype=object), return_counts=True)
    return counts / counts.sum()


def entropy(labels: Sequence[ClassLabel]) -> float:
    """Shannon entropy in bits; 0 log 0 counts as 0."""
    if len(labels) == 0:
        msg = "entropy of an empty label set"
        raise ConfigError(msg)
    p = _proportions(labels)
    return float(-np.sum(p * np.log2(p)))


def gini(labels: Sequence[ClassLabel]) -> float:
    """Gini index 1 - Σ p_c²."""
    if len(labels) == 0:
        msg = "gini index of an empty label set"
        raise ConfigError(msg)
    p = _proportions(labels)
    return float(1.0 - np.sum(p * p))


def _weighted_child_impurity(
    impurity: Callable[[Sequence[ClassLabel]], float],
    groups: Iterator[Sequence[ClassLabel]],
    n: int,
) -> float:
    return sum(len(g) / n * impurity(g) for g in groups if len(g))


def information_gain(data: LabeledTable, attribute: str | int) -> float:
    """Entropy of the labels minus the value-weighted entropy after splitting."""
    j = data.feature_index(attribute)
    if data.feature_kinds[j] != "categorical":
        msg = f"information gain needs a categorical attribute; {data.feature_names[j]!r} is numeric"
        raise ConfigError(msg)
    return _categorical_gain(entropy, data.column(j), data.labels)


def gini_gain(data: LabeledTable, attribute: str | int) -> float:
    """Gini decrease of a categorical split."""
    j = data.feature_index(attribute)
    if data.feature_kinds[j] != "categorical":
        msg = f"gini gain needs a categorical attribute; {data.feature_names[j]!r} is numeric"
        raise ConfigError(msg)
    return _categorical_gain(gini, data.column(j), data.labels)


def _categorical_gain(
    impurity: Callable[[Sequence[ClassLabel]], float],
    values: Sequence[object],
    labels: Sequence[ClassLabel],
) -> float:
    groups: dict[object, list[ClassLabel]] = {}
    for v, y in zip(values, labels, strict=True):
        groups.setdefault(v, []).append(y)
    gain = impurity(labels) - _weighted_child_impurity(impurity, iter(groups.values()), len(labels))
    return max(gain, 0.0)


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Leaf:
    counts: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class CategoricalSplit:
    feature: int
    branches: tuple[tuple[str, Node], ...]
    counts: tuple[int, ...]

    def child(self, value: str) -> Node | None:
        for v, node in self.branches:
            if v == value:
                return node
        return None


@dataclass(frozen=True, slots=True)
class NumericSplit:
    feature: int
    threshold: float
    left: Node
    right: Node
    counts: tuple[int, ...]


type Node = Leaf | CategoricalSplit | NumericSplit


def _route(node: Node, row: Row) -> Node:
    """Follow *row* to the deepest node it reaches."""
    while not isinstance(node, Leaf):
        if isinstance(node, NumericSplit):
            node = node.left if float(row[node.feature]) < node.threshold else node.right
            continue
        nxt = node.child(str(row[node.feature]))
        if nxt is None:
            return node
        node = nxt
    return node


def _majority(counts: tuple[int, ...]) -> int:
    return int(np.argmax(counts))


def _children(node: Node) -> tuple[Node, ...]:
    if isinstance(node, CategoricalSplit):
        return tuple(n for _, n in node.branches)
    if isinstance(node, NumericSplit):
        return (node.left, node.right)
    return ()


# ---------------------------------------------------------------------------
# Model
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DecisionTreeModel:
    """A fitted tree; predictions are leaf class frequencies."""

    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    root: Node
    criterion: Literal["entropy", "gini"] = "entropy"
    pruned: bool = False

    @property
    def algorithm(self) -> str:
        return "decision_tree"

    @property
    def root_attribute(self) -> str | None:
        """Name of the attribute tested at the root (None for a single leaf)."""
        if isinstance(self.root, Leaf):
            return None
        return self.schema.feature_names[self.root.feature]

    @property
    def depth(self) -> int:
        def walk(node: Node) -> int:
            kids = _children(node)
            return 0 if not kids else 1 + max(walk(k) for k in kids)

        return walk(self.root)

    @property
    def n_leaves(self) -> int:
        def walk(node: Node) -> int:
            kids = _children(node)
            return 1 if not kids else sum(walk(k) for k in kids)

        return walk(self.root)

    def predict_row(self, row: Row) -> Prediction:
        counts = np.asarray(_route(self.root, row).counts, dtype=np.float64)
        return make_prediction(self.classes, counts / counts.sum())

    def render(self) -> str:
        """Indented text rendering of the tree."""
        names = self.schema.feature_names
        lines: list[str] = []

        def leaf_text(counts: tuple[int, ...]) -> str:
            return f"{self.classes[_majority(counts)]} {list(counts)}"

        def walk(node: Node, indent: str) -> None:
            if isinstance(node, Leaf):
                return
            if isinstance(node, NumericSplit):
                arms: list[tuple[str, Node]] = [
                    (f"{names[node.feature]} < {node.threshold:g}", node.left),
                    (f"{names[node.feature]} >= {node.threshold:g}", node.right),
                ]
            else:
                arms = [(f"{names[node.feature]} = {v}", n) for v, n in node.branches]
            for label, child in arms:
                if isinstance(child, Leaf):
                    lines.append(f"{indent}{label}: {leaf_text(child.counts)}")
                else:
                    lines.append(f"{indent}{label}")
                    walk(child, indent + "  ")

        if isinstance(self.root, Leaf):
            return leaf_text(self.root.counts)
        walk(self.root, "")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Growth
# ---------------------------------------------------------------------------


class _Grower:
    """Recursive tree growth over row indices of one table."""

    __slots__ = ("_impurity", "classes", "data", "max_depth", "y")

    def __init__(
        self,
        data: LabeledTable,
        classes: tuple[ClassLabel, ...],
        criterion: Literal["entropy", "gini"],
        max_depth: int | None,
    ) -> None:
        self.data = data
        self.classes = classes
        position = {c: i for i, c in enumerate(classes)}
        self.y = np.asarray([position[label] for label in data.labels], dtype=np.intp)
        self.max_depth = max_depth
        self._impurity = entropy if criterion == "entropy" else gini

    def counts(self, idx: np.ndarray) -> tuple[int, ...]:
        return tuple(int(c) for c in np.bincount(self.y[idx], minlength=len(self.classes)))

    def _score(self, idx: np.ndarray, groups: list[np.ndarray]) -> float:
        labels = self.y[idx].tolist()
        children = (self.y[g].tolist() for g in groups)
        return self._impurity(labels) - _weighted_child_impurity(self._impurity, children, len(idx))

    def _best_split(self, idx: np.ndarray) -> tuple[float, int, float | None] | None:
        best: tuple[float, int, float | None] | None = None
        for j, kind in enumerate(self.data.feature_kinds):
            column = [self.data.rows[i][j] for i in idx]
            if kind == "categorical":
                values = list(dict.fromkeys(column))
                if len(values) < 2:
                    continue
                col = np.asarray(column, dtype=object)
                gain = self._score(idx, [idx[col == v] for v in values])
                threshold = None
            else:
                x = np.asarray(column, dtype=np.float64)
                distinct = np.unique(x)
                if distinct.size < 2:
                    continue
                gain, threshold = -np.inf, None
                for t in (distinct[:-1] + distinct[1:]) / 2.0:
                    left = x < t
                    g = self._score(idx, [idx[left], idx[~left]])
                    if g > gain + GAIN_TIE:
                        gain, threshold = g, float(t)
            if best is None or gain > best[0] + GAIN_TIE:
                best = (gain, j, threshold)
        return best

    def grow(self, idx: np.ndarray, depth: int = 0) -> Node:
        counts = self.counts(idx)
        if sum(1 for c in counts if c) <= 1:
            return Leaf(counts)
        if self.max_depth is not None and depth >= self.max_depth:
            return Leaf(counts)
        best = self._best_split(idx)
        if best is None:
            return Leaf(counts)
        _, j, threshold = best
        if threshold is not None:
            x = np.asarray([self.data.rows[i][j] for i in idx], dtype=np.float64)
            left = x < threshold
            return NumericSplit(
                feature=j,
                threshold=threshold,
                left=self.grow(idx[left], depth + 1),
                right=self.grow(idx[~left], depth + 1),
                counts=counts,
            )
        col = np.asarray([self.data.rows[i][j] for i in idx], dtype=object)
        values = list(dict.fromkeys(col.tolist()))
        return CategoricalSplit(
            feature=j,
            branches=tuple((str(v), self.grow(idx[col == v], depth + 1)) for v in values),
            counts=counts,
        )


# ---------------------------------------------------------------------------
# Pruning
# ---------------------------------------------------------------------------


def _errors(node: Node, rows: Sequence[Row], y: np.ndarray) -> int:
    return sum(1 for r, t in zip(rows, y, strict=True) if _majority(_route(node, r).counts) != t)


def _prune(node: Node, rows: list[Row], y: np.ndarray) -> Node:
    """Bottom-up reduced-error pruning; ties favour the smaller tree."""
    if isinstance(node, Leaf):
        return node
    if isinstance(node, NumericSplit):
        go_left = np.asarray([float(r[node.feature]) < node.threshold for r in rows], dtype=bool)
        left_rows = [r for r, g in zip(rows, go_left, strict=True) if g]
        right_rows = [r for r, g in zip(rows, go_left, strict=True) if not g]
        rebuilt: Node = replace(
            node,
            left=_prune(node.left, left_rows, y[go_left]),
            right=_prune(node.right, right_rows, y[~go_left]),
        )
    else:
        branches = []
        for value, child in node.branches:
            mask = np.asarray([str(r[node.feature]) == value for r in rows], dtype=bool)
            sub_rows = [r for r, m in zip(rows, mask, strict=True) if m]
            branches.append((value, _prune(child, sub_rows, y[mask])))
        rebuilt = replace(node, branches=tuple(branches))
    as_leaf = Leaf(node.counts)
    if _errors(as_leaf, rows, y) <= _errors(rebuilt, rows, y):
        return as_leaf
    return rebuilt


def fit_tree(config: ClassifierConfig, data: LabeledTable) -> DecisionTreeModel:
    """Grow (and optionally prune) a tree on *data*."""
    require_rows(data, "decision_tree")
    classes = data.classes
    train, holdout = data, None
    if config.pruning == "reduced_error" and data.n_rows >= 2:
        train, holdout = split_holdout(data, config.prune_fraction, config.seed)
    grower = _Grower(train, classes, config.split_criterion, config.max_depth)
    root = grower.grow(np.arange(train.n_rows, dtype=np.intp))
    if holdout is not None:
        position = {c: i for i, c in enumerate(classes)}
        y = np.asarray([position[label] for label in holdout.labels], dtype=np.intp)
        root = _prune(root, list(holdout.rows), y)
    return DecisionTreeModel(
        schema=data.schema(),
        classes=classes,
        root=root,
        criterion=config.split_criterion,
        pruned=holdout is not None,
    )
