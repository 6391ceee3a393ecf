"""Ensemble prediction by weighted voting.

The ensemble's margin at z is the sum of the bipolar base outputs,
sum_k f_k(z); the predicted label is its sign, with the tie sign(0) = +1.
Each base output carries its confidence, so this is the weighted vote. An
unweighted variant (majority of the base-output signs) is exposed as a
diagnostic only; everything else in the package votes weighted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import EnsembleModel, as_dense_vector
from .errors import DimensionMismatchError, UdeedError


@dataclass(frozen=True)
class Prediction:
    """A voted label with the margin that produced it; |margin| < m."""

    label: int
    margin: float


def _as_rows(model: EnsembleModel, x) -> np.ndarray:
    rows = np.asarray(x, dtype=np.float64)
    if rows.ndim != 2:
        raise UdeedError(f"features must be 2-dimensional, got shape {rows.shape}")
    if rows.shape[1] != model.dimension:
        raise DimensionMismatchError(
            f"feature dimension {rows.shape[1]} != model dimension {model.dimension}"
        )
    if not np.all(np.isfinite(rows)):
        raise UdeedError("features contain non-finite entries")
    return np.ascontiguousarray(rows)


def margins(model: EnsembleModel, x) -> np.ndarray:
    """Voting margins sum_k f_k(z) for each row z of x."""
    return kernels.f_matrix(model.weights, _as_rows(model, x)).sum(axis=0)


def labels_from_margins(values) -> np.ndarray:
    """Sign of each margin as a -1/+1 label, with sign(0) = +1."""
    values = np.asarray(values, dtype=np.float64)
    return np.where(values >= 0.0, 1, -1).astype(np.int64)


def predict(model: EnsembleModel, z) -> Prediction:
    """Weighted-vote prediction for one bias-augmented feature vector."""
    z = as_dense_vector(z, "z")
    margin = float(margins(model, z[None, :])[0])
    return Prediction(1 if margin >= 0.0 else -1, margin)


def predict_batch(model: EnsembleModel, x):
    """Weighted-vote labels and margins for each row of x."""
    margin_values = margins(model, x)
    return labels_from_margins(margin_values), margin_values


def predict_unweighted(model: EnsembleModel, z) -> Prediction:
    """Majority vote of the base-output signs (diagnostic only).

    Each classifier contributes sign(f_k(z)) with sign(0) = +1; the margin
    is the sum of these unit votes.
    """
    z = as_dense_vector(z, "z")
    f_values = kernels.f_matrix(model.weights, np.ascontiguousarray(z[None, :]))
    votes = np.where(f_values[:, 0] >= 0.0, 1.0, -1.0)
    margin = float(votes.sum())
    return Prediction(1 if margin >= 0.0 else -1, margin)


def accuracy(model: EnsembleModel, x, y) -> float:
    """Fraction of rows whose weighted-vote label matches y; in [0, 1]."""
    rows = _as_rows(model, x)
    if rows.shape[0] == 0:
        raise UdeedError("accuracy needs a non-empty example set")
    y = np.asarray(y)
    if y.shape != (rows.shape[0],):
        raise DimensionMismatchError(
            f"labels shape {y.shape} does not match {rows.shape[0]} rows"
        )
    if not np.all(np.isin(y, (-1, 1))):
        raise UdeedError("labels must contain only -1 and +1")
    predicted, _ = predict_batch(model, rows)
    return float(np.mean(predicted == y))
