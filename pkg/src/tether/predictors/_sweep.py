"""Pair sweep engine shared by LOOCV and full-matrix prediction.

Work is chunked by drug row.  Each chunk owns a scratch copy of A; with
masking on, the held-out entry is zeroed before the scorer runs and
restored afterwards, so a scorer never sees a_ij for its own pair.
Results are written by index, which keeps the output independent of
thread count and completion order.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from tether._errors import TetherError
from tether._types import DenseMatrix, InteractionMatrix
from tether.predictors._params import PairScore

type PairScorer = Callable[[InteractionMatrix, int, int], PairScore]


@dataclass(frozen=True, slots=True)
class SweepResult:
    """Scores and per-pair flags of one sweep."""

    values: DenseMatrix
    inferred: np.ndarray
    no_training_data: np.ndarray

    @property
    def n_inferred(self) -> int:
        return int(self.inferred.sum())


def _annotate(exc: BaseException, i: int, j: int, drug_ids: Sequence[str], target_ids: Sequence[str]) -> None:
    if isinstance(exc, TetherError) and exc.pair is None:
        exc.pair = (i, j)
    drug = drug_ids[i] if i < len(drug_ids) else str(i)
    target = target_ids[j] if j < len(target_ids) else str(j)
    exc.add_note(f"while predicting pair ({drug}, {target}) at index ({i}, {j})")


def sweep_pairs(
    interactions: InteractionMatrix,
    score_pair: PairScorer,
    *,
    mask: bool = True,
    workers: int = 1,
    drug_ids: Sequence[str] = (),
    target_ids: Sequence[str] = (),
) -> SweepResult:
    """Score every (i, j) pair, optionally with a_ij masked to 0.

    Raises:
        TetherError: Whatever the scorer raised, with ``pair`` set and a
            note naming the drug and target.

    """
    a = np.asarray(interactions, dtype=np.int8)
    n_d, n_t = a.shape
    values = np.zeros((n_d, n_t))
    inferred = np.zeros((n_d, n_t), dtype=bool)
    empty = np.zeros((n_d, n_t), dtype=bool)

    def run_row(i: int) -> None:
        scratch = a.copy()
        for j in range(n_t):
            held = scratch[i, j]
            if mask:
                scratch[i, j] = 0
            try:
                result = score_pair(scratch, i, j)
            except Exception as exc:
                _annotate(exc, i, j, drug_ids, target_ids)
                raise
            finally:
                scratch[i, j] = held
            values[i, j] = result.score
            inferred[i, j] = result.inferred
            empty[i, j] = result.no_training_data

    if workers <= 1 or n_d <= 1:
        for i in range(n_d):
            run_row(i)
    else:
        with ThreadPoolExecutor(max_workers=min(workers, n_d)) as pool:
            # list() re-raises the first failure
            list(pool.map(run_row, range(n_d)))
    return SweepResult(values=values, inferred=inferred, no_training_data=empty)
