"""Shared value types and vector helpers.

Vectors and matrices are float64 numpy arrays. Constructors validate once
(finite entries, consistent dimensions, labels in {-1, +1}) and freeze the
arrays read-only, so downstream math can assume clean inputs and instances
are safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, UdeedError

#: Label values accepted throughout the package.
LABELS = (-1, 1)


def as_dense_vector(values, name: str = "vector") -> np.ndarray:
    """Validate and return a read-only 1-D float64 array.

    Raises UdeedError when the input is not 1-dimensional, is empty, or
    contains NaN/infinite entries.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise UdeedError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise UdeedError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise UdeedError(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def as_feature_matrix(values, name: str = "features") -> np.ndarray:
    """Validate and return a read-only 2-D float64 array (rows = examples)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise UdeedError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UdeedError(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def as_label_vector(values, name: str = "labels") -> np.ndarray:
    """Validate and return a read-only int64 array of -1/+1 labels."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise UdeedError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    arr = arr.astype(np.int64, copy=True)
    if not np.all(np.isin(arr, LABELS)):
        raise UdeedError(f"{name} must contain only -1 and +1")
    arr.flags.writeable = False
    return arr


def dot(a, b) -> float:
    """Inner product of two equal-length vectors.

    Raises DimensionMismatchError on a length mismatch.
    """
    a = as_dense_vector(a, "a")
    b = as_dense_vector(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"dot: lengths differ ({a.shape[0]} vs {b.shape[0]})"
        )
    return float(a @ b)


def augment_bias(x) -> np.ndarray:
    """Append the constant feature 1 to a feature vector.

    The bias term of each linear classifier is absorbed as a trailing
    weight, so every model-facing feature vector must end with 1.
    """
    x = as_dense_vector(x, "x")
    out = np.append(x, 1.0)
    out.flags.writeable = False
    return out


def augment_bias_matrix(x) -> np.ndarray:
    """Append a constant-1 column to a feature matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise UdeedError(f"features must be 2-dimensional, got shape {x.shape}")
    out = np.hstack([x, np.ones((x.shape[0], 1))])
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class LabeledExample:
    """One bias-augmented feature vector with its -1/+1 label."""

    features: np.ndarray
    label: int

    def __post_init__(self):
        object.__setattr__(self, "features", as_dense_vector(self.features, "features"))
        if self.label not in LABELS:
            raise UdeedError(f"label must be -1 or +1, got {self.label!r}")
        if self.features[-1] != 1.0:
            raise UdeedError("features must be bias-augmented (trailing entry 1)")


@dataclass(frozen=True)
class TrainingData:
    """Labeled examples plus unlabeled feature rows, all bias-augmented.

    ``labeled_x`` is (L, d), ``labeled_y`` is (L,), ``unlabeled_x`` is (U, d)
    where d includes the trailing bias column. U may be zero.
    """

    labeled_x: np.ndarray
    labeled_y: np.ndarray
    unlabeled_x: np.ndarray

    def __post_init__(self):
        lx = as_feature_matrix(self.labeled_x, "labeled_x")
        ly = as_label_vector(self.labeled_y, "labeled_y")
        ux = np.asarray(self.unlabeled_x, dtype=np.float64)
        if ux.ndim != 2:
            raise UdeedError(f"unlabeled_x must be 2-dimensional, got shape {ux.shape}")
        if not np.all(np.isfinite(ux)):
            raise UdeedError("unlabeled_x contains non-finite entries")
        ux = ux.copy()
        ux.flags.writeable = False
        if lx.shape[0] == 0:
            raise UdeedError("labeled set must be non-empty")
        if lx.shape[0] != ly.shape[0]:
            raise DimensionMismatchError(
                f"labeled_x has {lx.shape[0]} rows but labeled_y has {ly.shape[0]}"
            )
        if ux.shape[0] > 0 and ux.shape[1] != lx.shape[1]:
            raise DimensionMismatchError(
                f"unlabeled_x dimension {ux.shape[1]} != labeled dimension {lx.shape[1]}"
            )
        if not (np.all(lx[:, -1] == 1.0) and (ux.shape[0] == 0 or np.all(ux[:, -1] == 1.0))):
            raise UdeedError("features must be bias-augmented (trailing column 1)")
        object.__setattr__(self, "labeled_x", lx)
        object.__setattr__(self, "labeled_y", ly)
        object.__setattr__(self, "unlabeled_x", ux)

    @property
    def dimension(self) -> int:
        """Feature dimension including the bias column."""
        return self.labeled_x.shape[1]

    @property
    def n_labeled(self) -> int:
        return self.labeled_x.shape[0]

    @property
    def n_unlabeled(self) -> int:
        return self.unlabeled_x.shape[0]

    @staticmethod
    def from_examples(labeled, unlabeled_rows) -> "TrainingData":
        """Build from LabeledExample items and raw unlabeled rows."""
        labeled = list(labeled)
        if not labeled:
            raise UdeedError("labeled set must be non-empty")
        lx = np.stack([ex.features for ex in labeled])
        ly = np.array([ex.label for ex in labeled], dtype=np.int64)
        unlabeled = list(unlabeled_rows)
        if unlabeled:
            ux = np.stack([as_dense_vector(r, "unlabeled row") for r in unlabeled])
        else:
            ux = np.empty((0, lx.shape[1]))
        return TrainingData(lx, ly, ux)


@dataclass(frozen=True)
class EnsembleModel:
    """m linear-logistic classifiers stored as an (m, d) weight matrix."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2:
            raise UdeedError(f"weights must be 2-dimensional, got shape {w.shape}")
        if w.shape[0] < 2:
            raise UdeedError(f"ensemble needs at least 2 classifiers, got {w.shape[0]}")
        if not np.all(np.isfinite(w)):
            raise UdeedError("weights contain non-finite entries")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        """Number of base classifiers."""
        return self.weights.shape[0]

    @property
    def dimension(self) -> int:
        """Weight dimension including the bias slot."""
        return self.weights.shape[1]

    def weight(self, k: int) -> np.ndarray:
        """Weight vector of classifier k (0-based)."""
        return self.weights[k]


class Variant(enum.Enum):
    """Which diversity set the training descent uses.

    LC uses none (purely supervised refinement), LCD uses the labeled
    features, LCUD runs a labeled-features stage and then an
    unlabeled-features stage.
    """

    LC = "lc"
    LCD = "lcd"
    LCUD = "lcud"


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters shared by initialization and descent.

    gamma weighs the diversity term against the empirical loss, lambda_
    weighs the data term of the initialization objective against its ridge
    penalty, and seed drives every random choice (bootstrap resampling).
    """

    m: int = 20
    gamma: float = 1.0
    lambda_: float = 1.0
    learning_rate: float = 0.25
    max_steps: int = 25
    init_max_steps: int = 100
    variant: Variant = Variant.LCUD
    seed: int = 0

    def __post_init__(self):
        if self.m < 2:
            raise UdeedError(f"m must be at least 2, got {self.m}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise UdeedError(f"gamma must be finite and >= 0, got {self.gamma}")
        if not (math.isfinite(self.lambda_) and self.lambda_ >= 0):
            raise UdeedError(f"lambda must be finite and >= 0, got {self.lambda_}")
        if not (math.isfinite(self.learning_rate) and self.learning_rate > 0):
            raise UdeedError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.max_steps < 0:
            raise UdeedError(f"max_steps must be >= 0, got {self.max_steps}")
        if self.init_max_steps < 0:
            raise UdeedError(f"init_max_steps must be >= 0, got {self.init_max_steps}")
        if self.seed < 0:
            raise UdeedError(f"seed must be >= 0, got {self.seed}")
