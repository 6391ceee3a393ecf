"""Ensemble diversity measures over an oracle (correctness) matrix.

The oracle matrix O has one row per classifier and one column per example:
o_ij = 1 when classifier i labels example j correctly (the sign of its own
output f_i, not the ensemble vote), else 0. Four measures summarize how
differently the classifiers err; all lie in [0, 1], and for DIS, the DF
complement, ENT, and CFD alike larger means more diverse.

With N examples, m classifiers, pairwise counts over classifier pairs
(i, k) and c_j correct classifiers in column j:

  DIS   = mean over pairs of (#columns where exactly one of i, k is correct) / N
  1-DF  = 1 - mean over pairs of (#columns where both are wrong) / N
  ENT   = (1/N) sum_j min(c_j, m - c_j) / (m - ceil(m/2))
  CFD   = 0 when p_0 = 1, else (1/(1-p_0)) sum_{i=1..m} ((m-i)/(m-1)) p_i,
          where p_i is the fraction of columns misclassified by exactly i
          classifiers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import EnsembleModel
from .errors import DimensionMismatchError, UdeedError

#: Measure names in canonical report order.
MEASURES = ("DIS", "1-DF", "ENT", "CFD")


@dataclass(frozen=True)
class OracleMatrix:
    """0/1 correctness entries, one row per classifier, m >= 2, N >= 1."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if entries.ndim != 2:
            raise UdeedError(f"oracle matrix must be 2-dimensional, got {entries.shape}")
        if entries.shape[0] < 2 or entries.shape[1] < 1:
            raise UdeedError(
                f"oracle matrix needs >= 2 rows and >= 1 column, got {entries.shape}"
            )
        if not np.all(np.isin(entries, (0, 1))):
            raise UdeedError("oracle matrix entries must be 0 or 1")
        entries = entries.astype(np.int64, copy=True)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n_examples(self) -> int:
        return self.entries.shape[1]


def oracle_matrix(model: EnsembleModel, x, y) -> OracleMatrix:
    """Per-classifier correctness of a labeled set.

    Classifier i is correct on row j when sign(f_i(x_j)) = y_j, with
    sign(0) = +1 as in voting.
    """
    rows = np.asarray(x, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise UdeedError("oracle matrix needs a non-empty 2-dimensional feature set")
    if rows.shape[1] != model.dimension:
        raise DimensionMismatchError(
            f"feature dimension {rows.shape[1]} != model dimension {model.dimension}"
        )
    y = np.asarray(y)
    if y.shape != (rows.shape[0],):
        raise DimensionMismatchError(
            f"labels shape {y.shape} does not match {rows.shape[0]} rows"
        )
    if not np.all(np.isin(y, (-1, 1))):
        raise UdeedError("labels must contain only -1 and +1")
    f_values = kernels.f_matrix(model.weights, np.ascontiguousarray(rows))
    predicted = np.where(f_values >= 0.0, 1, -1)
    return OracleMatrix((predicted == y[None, :]).astype(np.int64))


def _pair_stats(oracle: OracleMatrix):
    """Row sums r_i and the pair matrix A_ik = #columns both correct."""
    entries = oracle.entries
    return entries.sum(axis=1), entries @ entries.T


def disagreement(oracle: OracleMatrix) -> float:
    """DIS: mean pairwise rate of exactly-one-correct columns."""
    r, agree = _pair_stats(oracle)
    m, n = oracle.m, oracle.n_examples
    disagree = r[:, None] + r[None, :] - 2 * agree
    return float(disagree.sum() / (m * (m - 1) * n))


def double_fault_complement(oracle: OracleMatrix) -> float:
    """1 - DF: complement of the mean pairwise both-wrong rate."""
    r, agree = _pair_stats(oracle)
    m, n = oracle.m, oracle.n_examples
    both_wrong = n - r[:, None] - r[None, :] + agree
    both_wrong = both_wrong - np.diag(np.diag(both_wrong))
    return 1.0 - float(both_wrong.sum() / (m * (m - 1) * n))


def entropy_diversity(oracle: OracleMatrix) -> float:
    """ENT: averaged per-column vote-split score, 1 at a maximal split."""
    m = oracle.m
    correct = oracle.entries.sum(axis=0)
    return float(
        np.minimum(correct, m - correct).mean() / (m - math.ceil(m / 2))
    )


def coincident_failure_diversity(oracle: OracleMatrix) -> float:
    """CFD: 0 when failures always coincide or never happen, 1 when every
    failure is unique to one classifier."""
    m, n = oracle.m, oracle.n_examples
    wrong = m - oracle.entries.sum(axis=0)
    p = np.bincount(wrong, minlength=m + 1) / n
    if p[0] == 1.0:
        return 0.0
    i = np.arange(m + 1)
    weights = (m - i) / (m - 1)
    return float((weights[1:] * p[1:]).sum() / (1.0 - p[0]))


def all_measures(oracle: OracleMatrix) -> dict[str, float]:
    """The four measures keyed by their canonical names."""
    return {
        "DIS": disagreement(oracle),
        "1-DF": double_fault_complement(oracle),
        "ENT": entropy_diversity(oracle),
        "CFD": coincident_failure_diversity(oracle),
    }
